#pragma once

#include "zslen/error.hpp"
#include "zslen/rational.hpp"
#include "zslen/group.hpp"
#include "zslen/sequence.hpp"
#include "zslen/parallel.hpp"
#include "zslen/atoms.hpp"
#include "zslen/atom_cache.hpp"
#include "zslen/length_set.hpp"
#include "zslen/lengths.hpp"
#include "zslen/sweeps.hpp"
#include "zslen/structure.hpp"
#include "zslen/catalog.hpp"
