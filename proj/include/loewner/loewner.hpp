#pragma once

#include "loewner/scalarfn.hpp"
#include "loewner/hermitian.hpp"
#include "loewner/maps.hpp"
#include "loewner/constants.hpp"
#include "loewner/gaps.hpp"
#include "loewner/instances.hpp"
#include "loewner/certify.hpp"
