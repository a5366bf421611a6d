#pragma once

#include "vas/baselines.hpp"
#include "vas/dataset.hpp"
#include "vas/density.hpp"
#include "vas/error.hpp"
#include "vas/exact.hpp"
#include "vas/geometry.hpp"
#include "vas/interchange.hpp"
#include "vas/io.hpp"
#include "vas/quality.hpp"
#include "vas/spatial_index.hpp"
#include "vas/synthetic.hpp"
