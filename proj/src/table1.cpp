#include "table1.hpp"

#include <cmath>

namespace mm1ps::table1 {

namespace {
constexpr double kPi = 3.14159265358979323846;

// 9 traffic intensities x 10 service requirements.
const Cell kCells[] = {
    {0.1, 0.01, 6.5871, kPi}, {0.1, 0.05, 4.9639, kPi}, {0.1, 0.1, 4.2532, kPi},
    {0.1, 0.5, 2.4866, kPi},  {0.1, 1.0, 1.5299, kPi},  {0.1, 2.0, 0.0, 2.2245},
    {0.1, 3.0, 0.0, 1.5826},  {0.1, 4.0, 0.0, 1.2849},  {0.1, 5.0, 0.0, 1.0982},
    {0.1, 10.0, 0.0, 0.6693},

    {0.2, 0.01, 5.8796, kPi}, {0.2, 0.05, 4.2448, kPi}, {0.2, 0.1, 3.5186, kPi},
    {0.2, 0.5, 1.5625, kPi},  {0.2, 1.0, 0.0, 2.3370},  {0.2, 2.0, 0.0, 1.3682},
    {0.2, 3.0, 0.0, 1.0513},  {0.2, 4.0, 0.0, 0.8736},  {0.2, 5.0, 0.0, 0.7553},
    {0.2, 10.0, 0.0, 0.4694},

    {0.3, 0.01, 5.3831, kPi}, {0.3, 0.05, 3.7333, kPi}, {0.3, 0.1, 2.9861, kPi},
    {0.3, 0.5, 0.5195, kPi},  {0.3, 1.0, 0.0, 1.6111},  {0.3, 2.0, 0.0, 1.0394},
    {0.3, 3.0, 0.0, 0.8127},  {0.3, 4.0, 0.0, 0.6810},  {0.3, 5.0, 0.0, 0.5920},
    {0.3, 10.0, 0.0, 0.3729},

    {0.4, 0.01, 4.9614, kPi}, {0.4, 0.05, 3.2909, kPi}, {0.4, 0.1, 2.5125, kPi},
    {0.4, 0.5, 0.0, 1.9978},  {0.4, 1.0, 0.0, 1.2560},  {0.4, 2.0, 0.0, 0.8359},
    {0.4, 3.0, 0.0, 0.6599},  {0.4, 4.0, 0.0, 0.5562},  {0.4, 5.0, 0.0, 0.4855},
    {0.4, 10.0, 0.0, 0.3099},

    {0.5, 0.01, 4.5641, kPi}, {0.5, 0.05, 2.8626, kPi}, {0.5, 0.1, 2.0323, kPi},
    {0.5, 0.5, 0.0, 1.5312},  {0.5, 1.0, 0.0, 1.0129},  {0.5, 2.0, 0.0, 0.6860},
    {0.5, 3.0, 0.0, 0.5454},  {0.5, 4.0, 0.0, 0.4619},  {0.5, 5.0, 0.0, 0.4049},
    {0.5, 10.0, 0.0, 0.2620},

    {0.6, 0.01, 4.1575, kPi}, {0.6, 0.05, 2.4049, kPi}, {0.6, 0.1, 1.4685, kPi},
    {0.6, 0.5, 0.0, 1.2118},  {0.6, 1.0, 0.0, 0.8218},  {0.6, 2.0, 0.0, 0.5633},
    {0.6, 3.0, 0.0, 0.4506},  {0.6, 4.0, 0.0, 0.3834},  {0.6, 5.0, 0.0, 0.3373},
    {0.6, 10.0, 0.0, 0.2216},

    {0.7, 0.01, 3.7037, kPi}, {0.7, 0.05, 1.8498, kPi}, {0.7, 0.1, 0.4973, kPi},
    {0.7, 0.5, 0.0, 0.9534},  {0.7, 1.0, 0.0, 0.6566},  {0.7, 2.0, 0.0, 0.4544},
    {0.7, 3.0, 0.0, 0.3655},  {0.7, 4.0, 0.0, 0.3123},  {0.7, 5.0, 0.0, 0.2759},
    {0.7, 10.0, 0.0, 0.1842},

    {0.8, 0.01, 3.1312, kPi}, {0.8, 0.05, 0.9559, kPi}, {0.8, 0.1, 0.0, 1.8187},
    {0.8, 0.5, 0.0, 0.7188},  {0.8, 1.0, 0.0, 0.5006},  {0.8, 2.0, 0.0, 0.3492},
    {0.8, 3.0, 0.0, 0.2823},  {0.8, 4.0, 0.0, 0.2423},  {0.8, 5.0, 0.0, 0.2149},
    {0.8, 10.0, 0.0, 0.1461},

    {0.9, 0.01, 2.1965, kPi}, {0.9, 0.05, 0.0, 1.6812}, {0.9, 0.1, 0.0, 1.1094},
    {0.9, 0.5, 0.0, 0.4748},  {0.9, 1.0, 0.0, 0.3334},  {0.9, 2.0, 0.0, 0.2342},
    {0.9, 3.0, 0.0, 0.1903},  {0.9, 4.0, 0.0, 0.1641},  {0.9, 5.0, 0.0, 0.1461},
    {0.9, 10.0, 0.0, 0.1012},
};

} // namespace

const Cell* cells() { return kCells; }

std::size_t size() { return sizeof(kCells) / sizeof(kCells[0]); }

const Cell* find(double rho, double x) {
    for (const Cell& c : kCells)
        if (std::abs(c.rho - rho) < 1e-9 && std::abs(c.x - x) < 1e-9) return &c;
    return nullptr;
}

} // namespace mm1ps::table1
