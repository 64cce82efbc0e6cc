#pragma once

#include "bernstein/algebra.hpp"
#include "bernstein/bernop.hpp"
#include "bernstein/catalog.hpp"
#include "bernstein/construct.hpp"
#include "bernstein/equiv.hpp"
#include "bernstein/errors.hpp"
#include "bernstein/fields.hpp"
#include "bernstein/io.hpp"
#include "bernstein/linalg.hpp"
#include "bernstein/morphism.hpp"
#include "bernstein/poly.hpp"
