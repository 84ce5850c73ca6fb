#pragma once

#include "listing.hpp"
#include "delta.hpp"
#include "truncated.hpp"
#include "multigraph.hpp"
#include "operad.hpp"
#include "key_operads.hpp"
#include "representable.hpp"
#include "nerve.hpp"
#include "thicken.hpp"
#include "smith.hpp"
#include "homology.hpp"
#include "contraction.hpp"
#include "io.hpp"
