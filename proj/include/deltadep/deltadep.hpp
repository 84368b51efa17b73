#ifndef DELTADEP_DELTADEP_HPP
#define DELTADEP_DELTADEP_HPP

#include <deltadep/diffpoly.hpp>
#include <deltadep/homogenize.hpp>
#include <deltadep/kolchin.hpp>
#include <deltadep/multiindex.hpp>
#include <deltadep/ordinals.hpp>
#include <deltadep/parser.hpp>
#include <deltadep/poly.hpp>
#include <deltadep/rational.hpp>
#include <deltadep/wronskian.hpp>

#endif  // DELTADEP_DELTADEP_HPP
