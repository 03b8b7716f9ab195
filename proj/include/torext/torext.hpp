#pragma once

#include "rational.hpp"
#include "linalg.hpp"
#include "double_description.hpp"
#include "cone.hpp"
#include "polyhedron.hpp"
#include "lattice.hpp"
#include "fan.hpp"
#include "divisor.hpp"
#include "arrangement.hpp"
#include "components.hpp"
#include "cohomology.hpp"
#include "koszul.hpp"
#include "filtration.hpp"
#include "extension.hpp"
#include "io.hpp"
#include "svg.hpp"
