#pragma once

// Umbrella header: the whole library in one include.

#include "ergmbayes/calibrate.hpp"
#include "ergmbayes/exact.hpp"
#include "ergmbayes/exchange.hpp"
#include "ergmbayes/formula.hpp"
#include "ergmbayes/gof.hpp"
#include "ergmbayes/graph.hpp"
#include "ergmbayes/graph_io.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/net_sampler.hpp"
#include "ergmbayes/prior.hpp"
#include "ergmbayes/pseudolik.hpp"
#include "ergmbayes/rng.hpp"
#include "ergmbayes/summary.hpp"
#include "ergmbayes/svg.hpp"
#include "ergmbayes/table_io.hpp"
#include "ergmbayes/version.hpp"
