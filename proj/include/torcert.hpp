#pragma once

#include "torcert/bounds.hpp"
#include "torcert/construct.hpp"
#include "torcert/errors.hpp"
#include "torcert/fields.hpp"
#include "torcert/hypersurface.hpp"
#include "torcert/milnor.hpp"
#include "torcert/numbers.hpp"
#include "torcert/parse.hpp"
#include "torcert/pfister.hpp"
#include "torcert/polynomial.hpp"
#include "torcert/probes.hpp"
#include "torcert/residue.hpp"
#include "torcert/roots.hpp"
#include "torcert/twisting.hpp"
