#pragma once

#include "defgpa/error.hpp"
#include "defgpa/gpa.hpp"
#include "defgpa/metrics.hpp"
#include "defgpa/procrustes.hpp"
#include "defgpa/serialization.hpp"
#include "defgpa/shape_io.hpp"
#include "defgpa/shapes.hpp"
#include "defgpa/spectral.hpp"
#include "defgpa/tps.hpp"
#include "defgpa/types.hpp"
#include "defgpa/warps.hpp"
