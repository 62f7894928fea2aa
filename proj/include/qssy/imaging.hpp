#pragma once

#include "qssy/imaging/image.hpp"
#include "qssy/imaging/png_io.hpp"
