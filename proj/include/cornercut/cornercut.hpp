#ifndef CORNERCUT_CORNERCUT_HPP_
#define CORNERCUT_CORNERCUT_HPP_

#include "cornercut/rational.hpp"
#include "cornercut/vec2.hpp"
#include "cornercut/linalg.hpp"
#include "cornercut/hull2d.hpp"
#include "cornercut/instance.hpp"
#include "cornercut/lattice2d.hpp"
#include "cornercut/bodies.hpp"
#include "cornercut/exactlp.hpp"
#include "cornercut/blocking.hpp"
#include "cornercut/tilting.hpp"
#include "cornercut/facets.hpp"
#include "cornercut/io.hpp"
#include "cornercut/svg.hpp"

#endif  // CORNERCUT_CORNERCUT_HPP_
