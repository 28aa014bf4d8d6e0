// qhv: build, verify and classify BM quasi-Hermitian varieties of PG(3,q^2).
//
// Exit codes: 0 ok, 2 usage / input / cache mismatch, 3 invalid (alpha, beta),
// 4 invariant violation.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhv/io.hpp"
#include "qhv/qhv.hpp"

namespace {

using qhv::io::json;

constexpr int exit_usage = 2;
constexpr int exit_invalid = 3;
constexpr int exit_invariant = 4;

struct Config {
  std::optional<std::vector<int>> modulus;
  std::optional<std::string> epsilon;
};

Config load_config() {
  Config c;
  const char* path = std::getenv("QHV_CONFIG");
  if (!path || !*path) return c;
  std::ifstream in(path);
  if (!in) throw qhv::IoError(std::string("cannot open config ") + path);
  json j;
  try {
    j = json::parse(in);
    if (j.contains("modulus")) c.modulus = j["modulus"].get<std::vector<int>>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<std::string>();
  } catch (const json::exception& e) {
    throw qhv::IoError(std::string("bad config: ") + e.what());
  }
  return c;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw qhv::UsageError("bad integer list: " + s);
    }
  }
  return out;
}

struct Options {
  int p = 0;
  int n = 1;
  std::string modulus;
  std::string alpha = "eps";
  std::string beta = "eps";
  std::string alpha2, beta2;
  std::string set = "M";
  std::string out;
  std::string in;
  std::string payload;
  std::string edges;
  std::string replay;
  bool pretty = false;
  bool unchecked = false;
  bool full_bruteforce = false;
  bool full_sweep = false;
  std::size_t sample = 64;
  std::uint64_t seed = 1;
  unsigned threads = qhv::default_threads();
};

struct Context {
  qhv::FieldPtr field;
  std::optional<qhv::Fe> epsilon;
};

Context make_context(const Options& o, const Config& cfg, std::optional<qhv::FieldSpec> from_cache = {}) {
  std::optional<std::vector<int>> modulus = cfg.modulus;
  if (!o.modulus.empty()) modulus = parse_int_list(o.modulus);
  Context ctx;
  if (from_cache) {
    if (o.p != 0 && (o.p != from_cache->p || o.n != from_cache->n))
      throw qhv::UsageError("cache field does not match --p/--n");
    if (modulus && *modulus != from_cache->modulus) throw qhv::UsageError("cache modulus does not match");
    ctx.field = std::make_shared<const qhv::GaloisField>(*from_cache);
  } else {
    if (o.p == 0) throw qhv::UsageError("--p is required");
    ctx.field = qhv::GaloisField::make(o.p, o.n, modulus);
  }
  if (cfg.epsilon) ctx.epsilon = ctx.field->parse(*cfg.epsilon);
  return ctx;
}

qhv::BMParams make_params(const Context& ctx, const std::string& a, const std::string& b, bool unchecked) {
  const auto& f = *ctx.field;
  const qhv::Fe alpha = f.parse(a, ctx.epsilon), beta = f.parse(b, ctx.epsilon);
  return unchecked ? qhv::unchecked_params(ctx.field, alpha, beta, ctx.epsilon)
                   : qhv::validate_params(ctx.field, alpha, beta, ctx.epsilon);
}

void print_pretty(std::ostream& os, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_pretty(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) print_pretty(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << std::left << std::setw(40) << prefix << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Options& o, const json& j) {
  if (o.pretty)
    print_pretty(std::cout, j);
  else
    std::cout << j.dump() << '\n';
}

qhv::io::CacheContents load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qhv::IoError("cannot open " + path);
  return qhv::io::read_cache(in);
}

std::optional<qhv::BMParams> cache_params(const Context& ctx, const qhv::io::CacheHeader& h) {
  if (!h.alpha || !h.beta) return std::nullopt;
  return qhv::unchecked_params(ctx.field, ctx.field->parse(*h.alpha), ctx.field->parse(*h.beta), ctx.epsilon);
}

int cmd_build(const Options& o, const Config& cfg) {
  const auto ctx = make_context(o, cfg);
  const qhv::ProjectiveSpace space(ctx.field);
  const auto kind = qhv::set_kind_from_string(o.set);
  qhv::io::CacheHeader h{ctx.field->spec(), {}, {}, kind, 0, o.payload};
  qhv::PointSet s;
  if (kind == qhv::SetKind::H) {
    s = qhv::build_hermitian(space, o.threads);
  } else {
    const auto prm = make_params(ctx, o.alpha, o.beta, o.unchecked);
    h.alpha = ctx.field->format(prm.alpha);
    h.beta = ctx.field->format(prm.beta);
    s = qhv::build_point_set(space, prm, kind, o.threads);
  }
  if (h.payload.empty()) h.payload = ctx.field->q() >= 9 ? "raw64" : "json";
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw qhv::IoError("cannot write " + o.out);
    qhv::io::write_cache(out, h, s);
  }
  h.count = s.size();
  json j = qhv::io::to_json(h);
  j["out"] = o.out.empty() ? json(nullptr) : json(o.out);
  emit(o, j);
  return 0;
}

int cmd_verify(const Options& o, const Config& cfg) {
  const auto cache = load(o.in);
  const auto ctx = make_context(o, cfg, cache.header.spec);
  const qhv::ProjectiveSpace space(ctx.field);
  const auto rep = qhv::hyperplane_spectrum(space, cache.set, o.threads);
  json j = qhv::io::to_json(rep);
  j["set"] = std::string(qhv::to_string(cache.header.set));
  j["count"] = cache.set.size();
  emit(o, j);
  return 0;
}

int cmd_census(const Options& o, const Config& cfg) {
  const auto cache = load(o.in);
  const auto ctx = make_context(o, cfg, cache.header.spec);
  const qhv::ProjectiveSpace space(ctx.field);
  const auto prm = cache_params(ctx, cache.header);
  const auto ls = qhv::contained_lines(space, cache.set, o.threads);
  const auto census = qhv::line_census(space, cache.set, ls, prm ? &*prm : nullptr);
  if (!census.double_count_ok) throw qhv::InvariantViolation("double-count identity fails");
  emit(o, qhv::io::to_json(census));
  return 0;
}

int cmd_graph(const Options& o, const Config& cfg) {
  const auto cache = load(o.in);
  const auto ctx = make_context(o, cfg, cache.header.spec);
  const qhv::ProjectiveSpace space(ctx.field);
  const auto ls = qhv::contained_lines(space, cache.set, o.threads);
  const qhv::CollinearityGraph g(cache.set, ls);
  if (!o.edges.empty()) {
    std::ofstream out(o.edges);
    if (!out) throw qhv::IoError("cannot write " + o.edges);
    g.write_edge_list(out);
  }
  const auto prm = cache_params(ctx, cache.header);
  qhv::DiameterReport d;
  const bool reduce = !o.full_sweep && prm && cache.header.set == qhv::SetKind::M && ctx.field->q() >= 9;
  if (reduce) {
    const auto omega = qhv::omega_partition(space, *prm, o.threads);
    const auto src = qhv::reduced_diameter_sources(g, omega, o.sample, o.seed);
    d = qhv::connectivity_and_diameter(g, src, o.threads);
  } else {
    d = qhv::connectivity_and_diameter(g, {}, o.threads);
  }
  emit(o, qhv::io::to_json(g, d));
  return 0;
}

int cmd_classify(const Options& o, const Config& cfg) {
  const auto ctx = make_context(o, cfg);
  const auto& f = *ctx.field;
  json j = {{"q", f.q()}, {"field", qhv::io::to_json(f.spec())}};
  j["N_formula"] = qhv::count_classes_formula(f.p(), f.n());
  j["N_bruteforce"] = qhv::count_classes_bruteforce(f);
  json classes = json::array();
  if (o.full_bruteforce) {
    const auto g = qhv::group_by_class_key(ctx.field, ctx.epsilon);
    for (const auto& c : g.classes) classes.push_back(qhv::io::to_json(f, c));
    j["raw_pairs"] = g.raw_pairs;
    j["rejected"] = g.rejected;
    if (g.classes.size() != j["N_bruteforce"].get<std::uint64_t>())
      throw qhv::InvariantViolation("grouping by class key disagrees with the orbit count");
  } else {
    for (const auto& c : qhv::classes_from_orbits(f, ctx.epsilon)) classes.push_back(qhv::io::to_json(f, c));
  }
  j["classes"] = classes;
  json by_degree = json::object();
  for (const auto& [e, ne] : qhv::classes_by_degree(f.p(), f.n())) by_degree[std::to_string(e)] = ne;
  j["N_e"] = by_degree;  // elements of GF(q) \ {0,-1} of exact degree e over GF(p)
  if (j["N_formula"] != j["N_bruteforce"]) throw qhv::InvariantViolation("class count formula disagrees with orbit count");
  emit(o, j);
  return 0;
}

bool images_match(const Context& ctx, const qhv::BMParams& from, const qhv::BMParams& to, const qhv::Collineation& k,
                  unsigned threads) {
  const qhv::ProjectiveSpace space(ctx.field);
  const auto src = qhv::build_point_set(space, from, qhv::SetKind::M, threads);
  const auto dst = qhv::build_point_set(space, to, qhv::SetKind::M, threads);
  return qhv::apply_collineation(space, k, src).same_points(dst);
}

int cmd_equiv(const Options& o, const Config& cfg) {
  if (!o.replay.empty()) {
    std::ifstream in(o.replay);
    if (!in) throw qhv::IoError("cannot open " + o.replay);
    json w;
    try {
      w = json::parse(in);
    } catch (const json::exception& e) {
      throw qhv::IoError(std::string("bad witness: ") + e.what());
    }
    if (!w.value("equivalent", false)) throw qhv::UsageError("witness file records no collineation");
    const auto ctx = make_context(o, cfg, qhv::io::field_spec_from_json(w.at("field")));
    const auto from = make_params(ctx, w.at("source").at("alpha").get<std::string>(), w["source"].at("beta").get<std::string>(), false);
    const auto to = make_params(ctx, w.at("target").at("alpha").get<std::string>(), w["target"].at("beta").get<std::string>(), false);
    const auto k = qhv::io::collineation_from_json(*ctx.field, w.at("witness"));
    if (!images_match(ctx, from, to, k, o.threads)) throw qhv::InvariantViolation("witness does not map source onto target");
    emit(o, {{"replay", "ok"}, {"source", qhv::io::params_json(from)}, {"target", qhv::io::params_json(to)}});
    return 0;
  }
  if (o.alpha2.empty() || o.beta2.empty()) throw qhv::UsageError("--alpha2 and --beta2 are required");
  const auto ctx = make_context(o, cfg);
  const auto& f = *ctx.field;
  const auto from = make_params(ctx, o.alpha, o.beta, false);
  const auto to = make_params(ctx, o.alpha2, o.beta2, false);
  const auto k1 = qhv::class_key(from), k2 = qhv::class_key(to);
  const auto hit = qhv::find_collineation(from, to);
  json j = {{"field", qhv::io::to_json(f.spec())},
            {"source", qhv::io::params_json(from)},
            {"target", qhv::io::params_json(to)},
            {"delta", {f.format(k1.canonical), f.format(k2.canonical)}}};
  if (hit.has_value() != (k1.canonical == k2.canonical))
    throw qhv::InvariantViolation("collineation search disagrees with the delta invariant");
  if (!hit) {
    j["equivalent"] = false;
    j["result"] = "inequivalent";
  } else {
    if (!images_match(ctx, from, to, hit->map, o.threads))
      throw qhv::InvariantViolation("collineation does not map source onto target");
    j["equivalent"] = true;
    j["witness"] = qhv::io::to_json(f, hit->map);
    j["normal_form"] = {{"shape", hit->map.shape},
                        {"a", f.format(hit->map.a)},
                        {"b", f.format(hit->map.b)},
                        {"c", f.format(hit->map.c)},
                        {"u", f.format(hit->u)}};
  }
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw qhv::IoError("cannot write " + o.out);
    out << j.dump(2) << '\n';
  }
  emit(o, j);
  return 0;
}

void add_field_flags(CLI::App* c, Options& o, bool required) {
  auto* p = c->add_option("--p", o.p, "odd prime p (q = p^n)");
  if (required) p->required();
  c->add_option("--n", o.n, "extension degree n")->check(CLI::PositiveNumber);
  c->add_option("--modulus", o.modulus, "modulus of GF(q^2), coefficients c0,c1,... (overrides config)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BM quasi-Hermitian varieties of PG(3,q^2)"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "human-readable output");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* build = app.add_subcommand("build", "build a point set and write a cache file");
  add_field_flags(build, o, true);
  build->add_option("--alpha", o.alpha, "alpha (c0,c1,... or eps^k)");
  build->add_option("--beta", o.beta, "beta (c0,c1,... or eps^k)");
  build->add_option("--set", o.set, "B, F, M or H")->check(CLI::IsMember({"B", "F", "M", "H"}));
  build->add_option("--out", o.out, "cache file to write");
  build->add_option("--payload", o.payload, "json or raw64 (default: raw64 for q >= 9)")
      ->check(CLI::IsMember({"json", "raw64"}));
  build->add_flag("--unchecked", o.unchecked, "skip the validity condition");

  auto* verify = app.add_subcommand("verify", "hyperplane intersection spectrum of a cached set");
  auto* census = app.add_subcommand("census", "contained lines through each point of a cached set");
  auto* graph = app.add_subcommand("graph", "collinearity graph statistics of a cached set");
  for (auto* c : {verify, census, graph}) {
    c->add_option("in", o.in, "cache file")->required();
    add_field_flags(c, o, false);
  }
  graph->add_option("--edges", o.edges, "write the edge list here");
  graph->add_flag("--full-sweep", o.full_sweep, "BFS from every vertex at q >= 9");
  graph->add_option("--sample", o.sample, "affine BFS sources sampled at q >= 9");
  graph->add_option("--seed", o.seed, "sampling seed");

  auto* classify = app.add_subcommand("classify", "count and list equivalence classes");
  add_field_flags(classify, o, true);
  classify->add_flag("--full-bruteforce", o.full_bruteforce, "group every (alpha, beta) pair by class key");

  auto* equiv = app.add_subcommand("equiv", "search for a collineation between two varieties");
  add_field_flags(equiv, o, false);
  equiv->add_option("--alpha", o.alpha, "source alpha");
  equiv->add_option("--beta", o.beta, "source beta");
  equiv->add_option("--alpha2", o.alpha2, "target alpha");
  equiv->add_option("--beta2", o.beta2, "target beta");
  equiv->add_option("--out", o.out, "write the witness JSON here");
  equiv->add_option("--replay", o.replay, "check a previously written witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  try {
    const Config cfg = load_config();
    if (*build) return cmd_build(o, cfg);
    if (*verify) return cmd_verify(o, cfg);
    if (*census) return cmd_census(o, cfg);
    if (*graph) return cmd_graph(o, cfg);
    if (*classify) return cmd_classify(o, cfg);
    if (*equiv) return cmd_equiv(o, cfg);
  } catch (const qhv::InvalidParams& e) {
    std::cerr << json{{"error", "invalid_params"}, {"violation", qhv::to_string(e.violation)}, {"message", e.what()}}.dump()
              << '\n';
    return exit_invalid;
  } catch (const qhv::InvariantViolation& e) {
    std::cerr << json{{"error", "invariant_violation"}, {"message", e.what()}}.dump() << '\n';
    return exit_invariant;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
