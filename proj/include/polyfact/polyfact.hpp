#pragma once

#include "polyfact/catalog.hpp"
#include "polyfact/dense.hpp"
#include "polyfact/error.hpp"
#include "polyfact/fast.hpp"
#include "polyfact/induction.hpp"
#include "polyfact/io.hpp"
#include "polyfact/linalg.hpp"
#include "polyfact/linop.hpp"
#include "polyfact/poly.hpp"
#include "polyfact/trig.hpp"
