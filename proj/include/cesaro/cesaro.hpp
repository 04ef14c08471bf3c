// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

#ifndef CESARO_CESARO_HPP
#define CESARO_CESARO_HPP

#include <cesaro/discriminant.hpp>
#include <cesaro/distance.hpp>
#include <cesaro/error.hpp>
#include <cesaro/generators.hpp>
#include <cesaro/measures.hpp>
#include <cesaro/periodic.hpp>
#include <cesaro/polynomial.hpp>
#include <cesaro/potential.hpp>
#include <cesaro/quadrature.hpp>
#include <cesaro/regularity.hpp>
#include <cesaro/scenario.hpp>
#include <cesaro/sequences.hpp>
#include <cesaro/sets.hpp>
#include <cesaro/spectra.hpp>
#include <cesaro/tridiagonal.hpp>

#endif
