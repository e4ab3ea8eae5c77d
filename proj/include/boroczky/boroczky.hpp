#pragma once

#include "b12.hpp"
#include "b15.hpp"
#include "containment.hpp"
#include "ellcurve.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "polyalg.hpp"
#include "projgeom.hpp"
#include "render.hpp"
#include "scalar.hpp"
#include "scalar_parse.hpp"
