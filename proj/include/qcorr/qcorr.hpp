#pragma once

// Umbrella header: entropic measures of nonclassical correlation (D and G)
// plus negativity for multipartite density matrices.

#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/local_basis.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/measure_d.hpp"
#include "qcorr/measure_g.hpp"
#include "qcorr/negativity.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/state_io.hpp"
#include "qcorr/state_spec.hpp"
#include "qcorr/states.hpp"
#include "qcorr/sweep.hpp"
