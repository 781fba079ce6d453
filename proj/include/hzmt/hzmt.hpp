#pragma once

// Umbrella header: the full evaluator, verifier, and reporting surface.

#include "real.hpp"
#include "budget.hpp"
#include "bernoulli.hpp"
#include "hurwitz.hpp"
#include "stieltjes.hpp"
#include "digamma.hpp"
#include "polylog.hpp"
#include "herglotz.hpp"
#include "double_zeta.hpp"
#include "theta.hpp"
#include "laurent.hpp"
#include "verify.hpp"
#include "report.hpp"

#define HZMT_VERSION_MAJOR 1
#define HZMT_VERSION_MINOR 0
#define HZMT_VERSION_PATCH 0
