// Minimal library walkthrough: build a clipped square from inequality
// rows, enumerate its vertices, and print the V-representation.

#include <iostream>

#include "polyenum/convert.hpp"
#include "polyenum/io.hpp"

int main() {
    using namespace polyenum;

    // x >= 0, y >= 0, 1 - x >= 0, 1 - y >= 0, 3/2 - x - y >= 0
    Matrix<BigRat> rows(5, 3);
    rows(0, 1) = 1;
    rows(1, 2) = 1;
    rows(2, 0) = 1;
    rows(2, 1) = -1;
    rows(3, 0) = 1;
    rows(3, 2) = -1;
    rows(4, 0) = BigRat(3) / 2;
    rows(4, 1) = -1;
    rows(4, 2) = -1;
    const Representation square = make_representation(ReprKind::H, "clipped_square", std::move(rows));

    ConversionOptions opts; // defaults: reverse search, hybrid arithmetic
    ConversionSummary sum;
    const Representation vertices = convert_collect(square, opts, &sum);

    serialize(vertices, std::cout);
    std::cerr << "visited " << sum.bases << " dictionaries for " << sum.outputs << " vertices\n";
    return 0;
}
