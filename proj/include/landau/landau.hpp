#ifndef LANDAU_LANDAU_HPP
#define LANDAU_LANDAU_HPP

#include "landau/config.hpp"
#include "landau/core.hpp"
#include "landau/diagnostics.hpp"
#include "landau/dispersion.hpp"
#include "landau/echo.hpp"
#include "landau/fft.hpp"
#include "landau/io.hpp"
#include "landau/model.hpp"
#include "landau/quadrature.hpp"
#include "landau/simulator.hpp"
#include "landau/volterra.hpp"

#endif
