#ifndef GPAL_GPAL_HPP
#define GPAL_GPAL_HPP

#include "gpal/errors.hpp"
#include "gpal/truth_value.hpp"
#include "gpal/formula.hpp"
#include "gpal/language.hpp"
#include "gpal/parser.hpp"
#include "gpal/model.hpp"
#include "gpal/model_io.hpp"
#include "gpal/reduction.hpp"
#include "gpal/checker.hpp"
#include "gpal/calculus.hpp"
#include "gpal/random.hpp"

#endif  // GPAL_GPAL_HPP
