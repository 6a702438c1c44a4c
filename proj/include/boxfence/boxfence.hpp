#ifndef BOXFENCE_BOXFENCE_HPP
#define BOXFENCE_BOXFENCE_HPP

// Umbrella header for the library proper. The CLI front end lives in
// cli.hpp and is not pulled in here, since it drags in argument-parsing
// machinery most embedders do not want.

#include "analyze.hpp"
#include "errors.hpp"
#include "fences.hpp"
#include "io.hpp"
#include "normal.hpp"
#include "pipeline.hpp"
#include "quartiles.hpp"
#include "render.hpp"
#include "rng.hpp"
#include "sample.hpp"
#include "simulate.hpp"

#endif // BOXFENCE_BOXFENCE_HPP
