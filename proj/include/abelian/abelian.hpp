#pragma once

#include <abelian/errors.hpp>
#include <abelian/rational.hpp>
#include <abelian/lattice.hpp>
#include <abelian/oracle.hpp>
#include <abelian/elliptic.hpp>
#include <abelian/poisson.hpp>
