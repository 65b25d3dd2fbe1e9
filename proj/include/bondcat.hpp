#pragma once

// Umbrella header: the whole library.

#include "bondcat/complexes.hpp"
#include "bondcat/cones.hpp"
#include "bondcat/enum_oracle.hpp"
#include "bondcat/fields.hpp"
#include "bondcat/functor.hpp"
#include "bondcat/generator.hpp"
#include "bondcat/gentle.hpp"
#include "bondcat/harness.hpp"
#include "bondcat/json_io.hpp"
#include "bondcat/kmatrix.hpp"
#include "bondcat/linear.hpp"
#include "bondcat/matrix.hpp"
#include "bondcat/morphism.hpp"
#include "bondcat/object.hpp"
#include "bondcat/poset.hpp"
