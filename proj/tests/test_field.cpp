#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qhv/field.hpp"

using namespace qhv;

namespace {

// GF(25) with the modulus t^2 - t + 2.
FieldPtr gf25_alt() { return GaloisField::make(5, 1, std::vector<int>{2, 4, 1}); }

Fe t_of(const GaloisField& f) { return f.from_coeffs(std::vector<int>{0, 1}); }

}  // namespace

TEST(FieldArithmetic, MatchesPolynomialOracleExhaustively) {
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}}) {
    const auto f = GaloisField::make(p, n);
    const oracle::PolyField o(p, f->spec().modulus);
    for (std::uint32_t a = 0; a < f->order(); ++a)
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        ASSERT_EQ(f->mul(Fe{a}, Fe{b}).v, o.mul(a, b));
        ASSERT_EQ(f->add(Fe{a}, Fe{b}).v, o.add(a, b));
        ASSERT_EQ(f->sub(Fe{a}, Fe{b}).v, o.sub(a, b));
      }
  }
}

TEST(FieldArithmetic, MatchesPolynomialOracleSampledGF81AndGF729) {
  std::mt19937 rng(7);
  for (auto [p, n] : {std::pair{3, 2}, std::pair{3, 3}}) {
    const auto f = GaloisField::make(p, n);
    const oracle::PolyField o(p, f->spec().modulus);
    std::uniform_int_distribution<std::uint32_t> d(0, f->order() - 1);
    for (int i = 0; i < 5000; ++i) {
      const std::uint32_t a = d(rng), b = d(rng);
      ASSERT_EQ(f->mul(Fe{a}, Fe{b}).v, o.mul(a, b));
      ASSERT_EQ(f->add(Fe{a}, Fe{b}).v, o.add(a, b));
      if (b != 0) {
        ASSERT_EQ(o.mul(f->div(Fe{a}, Fe{b}).v, b), a);
      }
    }
  }
}

TEST(FieldArithmetic, IdentitiesAndDivision) {
  const auto f = gf25_alt();
  for (std::uint32_t v = 0; v < f->order(); ++v) {
    EXPECT_EQ(f->add(Fe{v}, Fe{}), Fe{v});
    if (v) {
      EXPECT_EQ(f->div(Fe{v}, Fe{v}), GaloisField::one());
    }
  }
  EXPECT_THROW(f->inv(Fe{}), DivisionByZero);
  EXPECT_THROW(f->div(GaloisField::one(), Fe{}), DivisionByZero);
  EXPECT_EQ(f->pow(Fe{7}, 0), GaloisField::one());
}

TEST(FieldArithmetic, AltModulusSquareOfT) {
  const auto f = gf25_alt();
  const Fe t = t_of(*f);
  EXPECT_EQ(f->coeffs(f->mul(t, t)), (std::vector<int>{3, 1}));
}

TEST(FieldArithmetic, MixedFieldsAreAUsageError) {
  const FieldElement a(GaloisField::make(3, 1), Fe{2});
  const FieldElement b(GaloisField::make(5, 1), Fe{2});
  EXPECT_THROW(a + b, UsageError);
  EXPECT_THROW(a * b, UsageError);
  const FieldElement c(GaloisField::make(3, 1), Fe{5});
  EXPECT_EQ((a * c).value(), GaloisField::make(3, 1)->mul(Fe{2}, Fe{5}));
}

TEST(FieldSpecValidation, RejectsBadInputs) {
  EXPECT_THROW(GaloisField::make(2, 1), DomainError);
  EXPECT_THROW(GaloisField::make(9, 1), DomainError);
  EXPECT_THROW(GaloisField::make(3, 0), DomainError);
  EXPECT_THROW(GaloisField::make(5, 1, std::vector<int>{1, 0, 1}), DomainError);  // t^2+1 = (t-2)(t+2)
  EXPECT_THROW(GaloisField::make(5, 1, std::vector<int>{2, 0, 2}), DomainError);  // not monic
}

TEST(FieldSpecValidation, DefaultModulusIsLeastIrreducible) {
  EXPECT_EQ(default_modulus(3, 1), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(default_modulus(5, 1), (std::vector<int>{2, 0, 1}));
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
    const auto m = default_modulus(p, n);
    EXPECT_TRUE(oracle::irreducible_bruteforce(m, p));
    // Every smaller monic candidate of the same degree is reducible.
    const int deg = 2 * n;
    std::uint64_t code = 0, scale = 1;
    for (int i = 0; i < deg; ++i, scale *= p) code += m[i] * scale;
    for (std::uint64_t c = 0; c < code; ++c) {
      std::vector<int> g(deg + 1);
      std::uint64_t r = c;
      for (int i = 0; i < deg; ++i, r /= p) g[i] = static_cast<int>(r % p);
      g[deg] = 1;
      EXPECT_FALSE(oracle::irreducible_bruteforce(g, p));
    }
  }
}

TEST(Conjugate, ExamplesAndAutomorphism) {
  const auto f = gf25_alt();
  EXPECT_EQ(f->conj(Fe{}), Fe{});
  for (Fe x : f->subfield_elements()) EXPECT_EQ(f->conj(x), x);
  const Fe eps = t_of(*f);
  EXPECT_EQ(f->conj(eps), f->sub(GaloisField::one(), eps));
  const oracle::PolyField o(5, f->spec().modulus);
  EXPECT_EQ(f->conj(eps).v, o.pow(eps.v, 5));

  std::mt19937 rng(3);
  for (auto field : {GaloisField::make(3, 2), GaloisField::make(5, 1), GaloisField::make(7, 1)}) {
    std::uniform_int_distribution<std::uint32_t> d(0, field->order() - 1);
    for (int i = 0; i < 1000; ++i) {
      const Fe x{d(rng)}, y{d(rng)};
      ASSERT_EQ(field->conj(field->add(x, y)), field->add(field->conj(x), field->conj(y)));
      ASSERT_EQ(field->conj(field->mul(x, y)), field->mul(field->conj(x), field->conj(y)));
      ASSERT_EQ(field->conj(field->conj(x)), x);
    }
  }
}

TEST(NormTrace, Examples) {
  const auto f = gf25_alt();
  EXPECT_EQ(f->norm(Fe{}), Fe{});
  EXPECT_EQ(f->trace(Fe{}), Fe{});
  for (Fe x : f->subfield_elements()) {
    EXPECT_EQ(f->norm(x), f->mul(x, x));
    EXPECT_EQ(f->trace(x), f->mul(f->from_int(2), x));
  }
  EXPECT_EQ(f->norm(t_of(*f)), f->from_int(2));
}

TEST(NormTrace, LandInSubfieldAndNormIsMultiplicative) {
  for (auto f : {GaloisField::make(3, 1), GaloisField::make(5, 1), GaloisField::make(3, 2)}) {
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      ASSERT_TRUE(f->in_subfield(f->norm(Fe{a})));
      ASSERT_TRUE(f->in_subfield(f->trace(Fe{a})));
      for (std::uint32_t b = 0; b < f->order(); b += 7)
        ASSERT_EQ(f->norm(f->mul(Fe{a}, Fe{b})), f->mul(f->norm(Fe{a}), f->norm(Fe{b})));
    }
  }
}

TEST(NormTrace, FibersHaveSizeQPlusOne) {
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
    const auto f = GaloisField::make(p, n);
    const oracle::PolyField o(p, f->spec().modulus);
    std::map<std::uint32_t, int> fiber;
    for (std::uint32_t a = 1; a < f->order(); ++a) ++fiber[o.pow(a, f->q() + 1)];
    ASSERT_EQ(fiber.size(), f->q() - 1);
    for (const auto& [value, size] : fiber) {
      EXPECT_EQ(size, static_cast<int>(f->q()) + 1);
      EXPECT_EQ(solve_norm(*f, Fe{value}).size(), f->q() + 1);
    }
  }
}

TEST(Subfield, Membership) {
  const auto f9 = GaloisField::make(3, 1);
  const Fe t = t_of(*f9);
  EXPECT_TRUE(f9->in_subfield(GaloisField::one()));
  EXPECT_FALSE(f9->in_subfield(f9->add(t, GaloisField::one())));
  EXPECT_EQ(f9->mul(t, t), f9->from_int(2));
  EXPECT_TRUE(f9->in_subfield(f9->mul(t, t)));
  const oracle::PolyField o(3, f9->spec().modulus);
  for (std::uint32_t v = 0; v < 9; ++v) EXPECT_EQ(f9->in_subfield(Fe{v}), o.pow(v, 3) == v);
  EXPECT_FALSE(f9->in_subfield(f9->primitive_element()));
}

TEST(PrimitiveElement, LeastGeneratorByOrderTest) {
  for (auto [p, n] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
    const auto f = GaloisField::make(p, n);
    const oracle::PolyField o(p, f->spec().modulus);
    std::uint32_t least = 0;
    for (std::uint32_t v = 1; v < f->order(); ++v)
      if (o.mult_order(v) == f->order() - 1) {
        least = v;
        break;
      }
    EXPECT_EQ(f->primitive_element().v, least);
    for (auto r : detail::prime_factors(f->order() - 1))
      EXPECT_NE(f->pow(f->primitive_element(), (f->order() - 1) / r), GaloisField::one());
  }
  const auto f25 = gf25_alt();
  EXPECT_EQ(f25->primitive_element(), t_of(*f25));
  EXPECT_NE(f25->pow(t_of(*f25), 8), GaloisField::one());
  EXPECT_NE(f25->pow(t_of(*f25), 12), GaloisField::one());
  EXPECT_EQ(GaloisField::make(3, 2)->primitive_element(), GaloisField::make(3, 2)->primitive_element());
}

TEST(SqrtMinusOne, Examples) {
  const auto f5 = GaloisField::make(5, 1);
  const auto r5 = f5->sqrt_minus_one();
  EXPECT_EQ(r5.value, Fe{2});
  EXPECT_TRUE(r5.in_subfield);
  const auto f3 = GaloisField::make(3, 1);
  const auto r3 = f3->sqrt_minus_one();
  EXPECT_EQ(r3.value, t_of(*f3));
  EXPECT_FALSE(r3.in_subfield);
  for (auto [p, n] : {std::pair{5, 1}, std::pair{3, 2}, std::pair{13, 1}, std::pair{3, 1}, std::pair{7, 1}}) {
    const auto f = GaloisField::make(p, n);
    const auto r = f->sqrt_minus_one();
    EXPECT_EQ(f->mul(r.value, r.value), f->neg(GaloisField::one()));
    EXPECT_EQ(r.in_subfield, f->q() % 4 == 1);
    for (std::uint32_t v = 0; v < r.value.v; ++v) EXPECT_NE(f->mul(Fe{v}, Fe{v}), f->neg(GaloisField::one()));
  }
}

TEST(SolveQLinear, Examples) {
  const auto f9 = GaloisField::make(3, 1);
  EXPECT_EQ(solve_q_linear(*f9, Fe{}, Fe{}), std::vector<Fe>{Fe{}});
  EXPECT_EQ(solve_q_linear(*f9, GaloisField::one(), Fe{}).size(), 3u);
  const Fe t = t_of(*f9);
  EXPECT_TRUE(solve_q_linear(*f9, GaloisField::one(), t).empty());
  EXPECT_TRUE(solve_q_linear_exhaustive(*f9, GaloisField::one(), t).empty());
}

TEST(SolveQLinear, TrichotomyOnRandomInputs) {
  std::mt19937 rng(11);
  for (auto f : {GaloisField::make(3, 1), GaloisField::make(5, 1)}) {
    std::uniform_int_distribution<std::uint32_t> d(0, f->order() - 1);
    const auto units = [&] {
      std::vector<Fe> u;
      for (std::uint32_t v = 0; v < f->order(); ++v)
        if (f->norm(Fe{v}) == GaloisField::one()) u.push_back(Fe{v});
      return u;
    }();
    for (int i = 0; i < 1000; ++i) {
      // Half the draws force norm(a) = 1 so every branch is exercised.
      const Fe a = i % 2 ? units[d(rng) % units.size()] : Fe{d(rng)};
      const Fe b{d(rng)};
      const auto fast = solve_q_linear(*f, a, b);
      const auto ref = solve_q_linear_exhaustive(*f, a, b);
      ASSERT_EQ(fast, ref);
      std::size_t expect = 1;
      if (f->norm(a) == GaloisField::one()) expect = f->conj(b) == f->mul(f->conj(a), b) ? f->q() : 0;
      ASSERT_EQ(ref.size(), expect);
    }
  }
}

TEST(SolveNorm, Examples) {
  const auto f = gf25_alt();
  EXPECT_EQ(solve_norm(*f, Fe{}), std::vector<Fe>{Fe{}});
  EXPECT_EQ(solve_norm(*f, GaloisField::one()).size(), 6u);
  const auto two = solve_norm(*f, f->from_int(2));
  EXPECT_EQ(two.size(), 6u);
  EXPECT_TRUE(std::find(two.begin(), two.end(), t_of(*f)) != two.end());
  for (Fe x : two) EXPECT_EQ(f->norm(x), f->from_int(2));
  EXPECT_THROW(solve_norm(*f, t_of(*f)), DomainError);
  EXPECT_EQ(solve_norm(*f, f->neg(GaloisField::one())).size(), 6u);
}

TEST(SubfieldDecompose, Examples) {
  const auto f = gf25_alt();
  const Fe eps = t_of(*f);
  for (Fe x : f->subfield_elements()) EXPECT_EQ(subfield_decompose(*f, x, eps), std::pair(x, Fe{}));
  EXPECT_EQ(subfield_decompose(*f, eps, eps), std::pair(Fe{}, GaloisField::one()));
  EXPECT_EQ(subfield_decompose(*f, f->mul(eps, eps), eps), std::pair(f->from_int(3), GaloisField::one()));
  EXPECT_THROW(subfield_decompose(*f, eps, Fe{2}), DomainError);
  for (std::uint32_t v = 0; v < f->order(); ++v) {
    const auto [x0, x1] = subfield_decompose(*f, Fe{v}, eps);
    EXPECT_TRUE(f->in_subfield(x0) && f->in_subfield(x1));
    EXPECT_EQ(f->add(x0, f->mul(eps, x1)), Fe{v});
  }
}

TEST(ElementText, ParseAndFormat) {
  const auto f = gf25_alt();
  EXPECT_EQ(f->format(t_of(*f)), "0,1");
  EXPECT_EQ(f->parse("0,1"), t_of(*f));
  EXPECT_EQ(f->parse("3"), Fe{3});
  EXPECT_EQ(f->parse("eps"), f->primitive_element());
  EXPECT_EQ(f->parse("eps^2"), f->mul(t_of(*f), t_of(*f)));
  EXPECT_EQ(f->parse("eps^-1"), f->inv(t_of(*f)));
  EXPECT_EQ(f->parse("eps", Fe{7}), Fe{7});
  for (std::uint32_t v = 0; v < f->order(); ++v) EXPECT_EQ(f->parse(f->format(Fe{v})), Fe{v});
  EXPECT_THROW(f->parse("1,x"), DomainError);
  EXPECT_THROW(f->parse("5,0"), DomainError);
  EXPECT_THROW(f->parse("1,2,3"), DomainError);
  EXPECT_THROW(f->parse("eps*2"), DomainError);
}

TEST(Frobenius, OrderAndFixedField) {
  const auto f = GaloisField::make(3, 2);
  for (std::uint32_t v = 0; v < f->order(); ++v) {
    const Fe x{v};
    EXPECT_EQ(f->frobenius(x, 1), f->pow(x, 3));
    EXPECT_EQ(f->frobenius(x, f->degree()), x);
    EXPECT_EQ(f->frobenius(x, 2), f->conj(x));
  }
}
