#pragma once

/// Umbrella header: steady states, heat currents, rectification, dynamics,
/// parameter sweeps, and table/plot serialization for the two-atom thermal
/// diode with auxiliary control atoms.

#include "qtd/basis.hpp"
#include "qtd/coherences.hpp"
#include "qtd/config.hpp"
#include "qtd/errors.hpp"
#include "qtd/evolve.hpp"
#include "qtd/observables.hpp"
#include "qtd/rates.hpp"
#include "qtd/run_config.hpp"
#include "qtd/steady.hpp"
#include "qtd/svg.hpp"
#include "qtd/sweep.hpp"
#include "qtd/table.hpp"
#include "qtd/transitions.hpp"

#define QTD_VERSION "1.0.0"
