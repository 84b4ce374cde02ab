#pragma once

#include "paaa/barycentric.hpp"
#include "paaa/datagen.hpp"
#include "paaa/fit.hpp"
#include "paaa/io.hpp"
#include "paaa/lsq.hpp"
#include "paaa/selection.hpp"
#include "paaa/types.hpp"
