#ifndef TORICQH_TORICQH_HPP
#define TORICQH_TORICQH_HPP

#include "circle.hpp"
#include "cohomology.hpp"
#include "document.hpp"
#include "examples.hpp"
#include "expr.hpp"
#include "io.hpp"
#include "loops.hpp"
#include "novikov.hpp"
#include "oracle.hpp"
#include "polytope.hpp"
#include "quantum.hpp"
#include "seidel.hpp"

#endif
