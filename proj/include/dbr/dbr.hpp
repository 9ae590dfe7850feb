#ifndef DBR_DBR_HPP
#define DBR_DBR_HPP

// Umbrella header.

#include "dbr/error.hpp"
#include "dbr/hardy.hpp"
#include "dbr/linalg.hpp"
#include "dbr/toeplitz.hpp"
#include "dbr/contractive.hpp"
#include "dbr/dichotomy.hpp"
#include "dbr/hb_space.hpp"
#include "dbr/nonextreme.hpp"
#include "dbr/extreme_model.hpp"
#include "dbr/random.hpp"
#include "dbr/io.hpp"
#include "dbr/verify.hpp"

#endif  // DBR_DBR_HPP
