#pragma once

#include "profitmax/alias_table.hpp"
#include "profitmax/certify.hpp"
#include "profitmax/diffusion.hpp"
#include "profitmax/errors.hpp"
#include "profitmax/evaluator.hpp"
#include "profitmax/generators.hpp"
#include "profitmax/graph.hpp"
#include "profitmax/graph_io.hpp"
#include "profitmax/modular.hpp"
#include "profitmax/node_set.hpp"
#include "profitmax/optimize.hpp"
#include "profitmax/prune.hpp"
#include "profitmax/random.hpp"
#include "profitmax/rr_sampling.hpp"
#include "profitmax/serialization.hpp"
