#pragma once

#include "ordrep/circle.hpp"
#include "ordrep/cli.hpp"
#include "ordrep/compositions.hpp"
#include "ordrep/erdosfuchs.hpp"
#include "ordrep/intset.hpp"
#include "ordrep/numeric.hpp"
#include "ordrep/repcount.hpp"
#include "ordrep/series.hpp"
