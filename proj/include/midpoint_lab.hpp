#pragma once

// Umbrella header for the midpoint_lab library.

#include "midpoint_lab/core/linalg.hpp"
#include "midpoint_lab/core/lp.hpp"
#include "midpoint_lab/core/parallel.hpp"
#include "midpoint_lab/core/random.hpp"
#include "midpoint_lab/core/scalar.hpp"
#include "midpoint_lab/core/vector.hpp"
#include "midpoint_lab/polytope/caratheodory.hpp"
#include "midpoint_lab/polytope/polygon.hpp"
#include "midpoint_lab/polytope/polytope.hpp"
#include "midpoint_lab/norms/norm_oracle.hpp"
#include "midpoint_lab/norms/operations.hpp"
#include "midpoint_lab/constructions/candidate.hpp"
#include "midpoint_lab/constructions/closed_form.hpp"
#include "midpoint_lab/constructions/face.hpp"
#include "midpoint_lab/constructions/hexagon.hpp"
#include "midpoint_lab/constructions/infinite_family.hpp"
#include "midpoint_lab/constructions/moment_curve.hpp"
#include "midpoint_lab/verify/certify.hpp"
#include "midpoint_lab/verify/structure.hpp"
#include "midpoint_lab/search/bounds.hpp"
#include "midpoint_lab/search/gram.hpp"
#include "midpoint_lab/search/numeric_search.hpp"
#include "midpoint_lab/io/json.hpp"
#include "midpoint_lab/io/svg.hpp"
