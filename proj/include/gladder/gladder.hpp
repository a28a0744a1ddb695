#pragma once

// Everything: chains, trace/capacity, ladders, landscapes, convergence checks, CLI drivers.

#include "gladder/common.hpp"

#include "gladder/chain/chain.hpp"
#include "gladder/chain/elimination.hpp"
#include "gladder/chain/functionals.hpp"
#include "gladder/chain/graph.hpp"
#include "gladder/chain/json.hpp"
#include "gladder/chain/measure.hpp"
#include "gladder/chain/poincare.hpp"
#include "gladder/chain/simulate.hpp"
#include "gladder/chain/tilt.hpp"

#include "gladder/potential/capacity.hpp"
#include "gladder/potential/trace.hpp"

#include "gladder/hierarchy/functional.hpp"
#include "gladder/hierarchy/ladder.hpp"
#include "gladder/hierarchy/reduced.hpp"
#include "gladder/hierarchy/report.hpp"

#include "gladder/landscape/catalog.hpp"
#include "gladder/landscape/critical.hpp"
#include "gladder/landscape/expr.hpp"
#include "gladder/landscape/gibbs.hpp"
#include "gladder/landscape/grid.hpp"
#include "gladder/landscape/landscape.hpp"
#include "gladder/landscape/potential.hpp"
#include "gladder/landscape/saddle.hpp"
#include "gladder/landscape/validate.hpp"
#include "gladder/landscape/wells.hpp"

#include "gladder/verify/h1.hpp"
#include "gladder/verify/ratios.hpp"
#include "gladder/verify/recovery.hpp"
#include "gladder/verify/table.hpp"

#include "gladder/cli/config.hpp"
#include "gladder/cli/run.hpp"
