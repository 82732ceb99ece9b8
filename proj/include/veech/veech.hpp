#pragma once

#include "veech/error.hpp"
#include "veech/graph/finite_graph.hpp"
#include "veech/graph/union_find.hpp"
#include "veech/lemmas.hpp"
#include "veech/modn.hpp"
#include "veech/parallel.hpp"
#include "veech/quadfield.hpp"
#include "veech/reduce.hpp"
#include "veech/sampling.hpp"
#include "veech/schreier.hpp"
#include "veech/spectral.hpp"
#include "veech/surface.hpp"
