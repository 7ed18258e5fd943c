#pragma once

#include "opent/claims.hpp"
#include "opent/entropy.hpp"
#include "opent/errors.hpp"
#include "opent/interval.hpp"
#include "opent/io.hpp"
#include "opent/matrix.hpp"
#include "opent/perspective.hpp"
#include "opent/probe.hpp"
#include "opent/random_spd.hpp"
#include "opent/rng.hpp"
#include "opent/scalar_fn.hpp"
#include "opent/spectral.hpp"
