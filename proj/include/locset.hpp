#pragma once

// Guaranteed set-membership multilateration toolkit: outer-bounding
// localization sets from unknown-but-bounded range measurements, anchor
// geometry scores for offline subset selection, and online certificates
// for the realized uncertainty set.

#include "locset/anchor_geometry.hpp"
#include "locset/ball_certificates.hpp"
#include "locset/difference_polytope.hpp"
#include "locset/experiments.hpp"
#include "locset/format.hpp"
#include "locset/measurement.hpp"
#include "locset/report.hpp"
#include "locset/rng.hpp"
#include "locset/scenario.hpp"
#include "locset/selection.hpp"
#include "locset/simplex_qp.hpp"
#include "locset/socp.hpp"
#include "locset/support.hpp"
