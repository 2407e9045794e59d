#pragma once

#include "sandlab/aggregate.hpp"
#include "sandlab/algebra.hpp"
#include "sandlab/classify.hpp"
#include "sandlab/errors.hpp"
#include "sandlab/generators.hpp"
#include "sandlab/graph.hpp"
#include "sandlab/io.hpp"
#include "sandlab/render.hpp"
#include "sandlab/resistance.hpp"
#include "sandlab/rotor.hpp"
#include "sandlab/sandpile.hpp"
#include "sandlab/stacks.hpp"
#include "sandlab/types.hpp"
