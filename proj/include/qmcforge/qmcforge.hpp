#pragma once

// Umbrella header.

#include "qmcforge/error.hpp"
#include "qmcforge/experiments.hpp"
#include "qmcforge/fom.hpp"
#include "qmcforge/gf2.hpp"
#include "qmcforge/io.hpp"
#include "qmcforge/objective.hpp"
#include "qmcforge/oracles.hpp"
#include "qmcforge/pointsets.hpp"
#include "qmcforge/randomize.hpp"
#include "qmcforge/rng.hpp"
#include "qmcforge/search.hpp"
#include "qmcforge/weights.hpp"
