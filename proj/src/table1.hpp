#ifndef MM1PS_TABLE1_HPP
#define MM1PS_TABLE1_HPP

#include <cstddef>

namespace mm1ps::table1 {

// Reference grid of dominant singularities eta = u + i*v, 4 decimal places.
// The same rows ship as data/table1.txt (whitespace-separated rho x u v).
struct Cell {
    double rho;
    double x;
    double u;
    double v;
};

const Cell* cells();
std::size_t size();

// Returns nullptr when the (rho, x) pair is not on the reference grid.
const Cell* find(double rho, double x);

} // namespace mm1ps::table1

#endif
