#pragma once

#include "fermitrap/couplings.hpp"
#include "fermitrap/csv.hpp"
#include "fermitrap/dipole.hpp"
#include "fermitrap/errors.hpp"
#include "fermitrap/fermi_edge.hpp"
#include "fermitrap/matrix_elements.hpp"
#include "fermitrap/observables.hpp"
#include "fermitrap/quadrature.hpp"
#include "fermitrap/specfun.hpp"
