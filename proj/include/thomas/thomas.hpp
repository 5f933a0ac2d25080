// Umbrella header.
#pragma once

#include "thomas/decompose.hpp"
#include "thomas/diffsys.hpp"
#include "thomas/factor.hpp"
#include "thomas/io.hpp"
#include "thomas/janet.hpp"
#include "thomas/parser.hpp"
#include "thomas/polynomial.hpp"
#include "thomas/splitting.hpp"
#include "thomas/subres.hpp"
#include "thomas/system.hpp"
#include "thomas/verify.hpp"
