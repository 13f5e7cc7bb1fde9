#pragma once

#include "pomdp/approx.hpp"
#include "pomdp/bayesnet.hpp"
#include "pomdp/dense.hpp"
#include "pomdp/dialogue.hpp"
#include "pomdp/error.hpp"
#include "pomdp/exact.hpp"
#include "pomdp/factored.hpp"
#include "pomdp/factored_io.hpp"
#include "pomdp/fixtures.hpp"
#include "pomdp/grid.hpp"
#include "pomdp/grid_points.hpp"
#include "pomdp/io.hpp"
#include "pomdp/lp.hpp"
#include "pomdp/model.hpp"
#include "pomdp/policy.hpp"
#include "pomdp/prune.hpp"
#include "pomdp/random.hpp"
#include "pomdp/simulate.hpp"
#include "pomdp/solver.hpp"
#include "pomdp/text.hpp"
#include "pomdp/vector_set.hpp"
