#pragma once

// Umbrella header.

#include "linkhom/alexander.hpp"
#include "linkhom/covers.hpp"
#include "linkhom/errors.hpp"
#include "linkhom/growth.hpp"
#include "linkhom/lattices.hpp"
#include "linkhom/laurent.hpp"
#include "linkhom/link.hpp"
#include "linkhom/mahler.hpp"
