// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cesaro authors

// Walks once around the isospectral torus of the period-2 generator
// a = (1, 0.5), b = (0, 0), printing each point and the distance
// d_m(J, torus) of the perturbation b_n += 1/n for a few m.

#include <cesaro/cesaro.hpp>

#include <iostream>
#include <vector>

int main()
{
    const cesaro::PeriodicJacobi j0{{1.0, 0.5}, {0.0, 0.0}};
    const cesaro::IsospectralTorus torus(j0);

    std::cout << "bands:";
    for (const auto& band : torus.set().bands) {
        std::cout << " [" << band.lo << ", " << band.hi << "]";
    }
    std::cout << "\ncapacity: " << cesaro::capacity(torus.set(), torus.disc()) << "\n\n";

    std::vector<cesaro::TorusPoint> pts;
    for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * cesaro::detail::pi * k / 8.0;
        pts.push_back(torus.point(std::vector<double>{th}));
    }
    cesaro::write_torus_samples_csv(std::cout, pts, 2);

    const auto j = cesaro::periodic_harmonic_jacobi(j0, 1.0);
    const auto grid = cesaro::torus_grid(torus);
    std::cout << "\nm,d_m\n";
    for (std::size_t m : {1, 10, 100, 1000}) {
        std::cout << m << ',' << cesaro::d_to_torus(j, m, torus, grid) << '\n';
    }
}
