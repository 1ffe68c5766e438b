#pragma once

#include "cosimplex/error.hpp"
#include "cosimplex/matrix.hpp"
#include "cosimplex/smith.hpp"
#include "cosimplex/abelian.hpp"
#include "cosimplex/ordinal.hpp"
#include "cosimplex/groupoid.hpp"
#include "cosimplex/simplicial.hpp"
#include "cosimplex/cosimplicial.hpp"
#include "cosimplex/cosab.hpp"
#include "cosimplex/cosimp_groupoid.hpp"
#include "cosimplex/torsors.hpp"
#include "cosimplex/hdelta.hpp"
#include "cosimplex/postnikov.hpp"
#include "cosimplex/rng.hpp"
#include "cosimplex/generators.hpp"
#include "cosimplex/verify.hpp"
#include "cosimplex/json_io.hpp"
#include "cosimplex/samples.hpp"
