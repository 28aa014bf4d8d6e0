#pragma once

#include "qhv/classify.hpp"
#include "qhv/error.hpp"
#include "qhv/field.hpp"
#include "qhv/graph.hpp"
#include "qhv/lines.hpp"
#include "qhv/parallel.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"
#include "qhv/variety.hpp"
