#pragma once

// Umbrella header for the stgmine library: spatiotemporal graphs over
// labeled-region snapshots, CSP-based object identification with incremental
// nogood re-solving, subgraph pattern matching as constraint networks, and
// evolution analysis on top of the matches.

#include "stgmine/analysis.hpp"
#include "stgmine/attr.hpp"
#include "stgmine/bench.hpp"
#include "stgmine/construct.hpp"
#include "stgmine/errors.hpp"
#include "stgmine/identify.hpp"
#include "stgmine/io.hpp"
#include "stgmine/log.hpp"
#include "stgmine/match.hpp"
#include "stgmine/object_template.hpp"
#include "stgmine/pattern.hpp"
#include "stgmine/region.hpp"
#include "stgmine/snapshot.hpp"
#include "stgmine/stg.hpp"
#include "stgmine/synthetic.hpp"
