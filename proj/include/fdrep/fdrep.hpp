#ifndef FDREP_FDREP_HPP
#define FDREP_FDREP_HPP

#include "fdrep/ascent.hpp"
#include "fdrep/clamp.hpp"
#include "fdrep/eigenvalue.hpp"
#include "fdrep/errors.hpp"
#include "fdrep/golden.hpp"
#include "fdrep/group_algebra.hpp"
#include "fdrep/linalg.hpp"
#include "fdrep/perm_rep.hpp"
#include "fdrep/permutation.hpp"
#include "fdrep/seminorm.hpp"
#include "fdrep/telescope.hpp"
#include "fdrep/unitary_tuple.hpp"
#include "fdrep/word.hpp"

#endif
