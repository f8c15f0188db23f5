#pragma once

#include "stein/classification.hpp"
#include "stein/context.hpp"
#include "stein/document.hpp"
#include "stein/embedding.hpp"
#include "stein/error.hpp"
#include "stein/gamma.hpp"
#include "stein/generators.hpp"
#include "stein/int_matrix.hpp"
#include "stein/normal_form.hpp"
#include "stein/number_field.hpp"
#include "stein/plmap.hpp"
#include "stein/polynomial.hpp"
#include "stein/prefix_exchange.hpp"
#include "stein/rational.hpp"
#include "stein/slope_group.hpp"
#include "stein/words.hpp"
