#ifndef CRALG_DYNAMICAL_HPP
#define CRALG_DYNAMICAL_HPP

#include "cralg/dynamical/certificate.hpp"
#include "cralg/dynamical/json_io.hpp"
#include "cralg/dynamical/proof.hpp"
#include "cralg/dynamical/syntax.hpp"
#include "cralg/dynamical/theories.hpp"

#endif // CRALG_DYNAMICAL_HPP
