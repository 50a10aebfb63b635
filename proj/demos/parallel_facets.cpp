// Facet enumeration of a cyclic polytope with the parallel reverse
// search: generate the point set, convert V to H with two workers, and
// compare the facet count against the upper bound theorem value.

#include <iostream>

#include "polyenum/convert.hpp"
#include "polyenum/shapes.hpp"

int main() {
    using namespace polyenum;

    const Representation points = cyclic(14, 8);

    ConversionOptions opts;
    opts.engine = Engine::ReverseSearch;
    opts.workers = 2;
    opts.par.initDepth = 2;

    ConversionSummary sum;
    const Representation facets = convert_collect(points, opts, &sum);

    std::cout << points.name << ": " << facets.m() << " facets from " << points.m()
              << " points in dimension 8\n";
    std::cout << "upper bound theorem value: " << ubt_bound(points.m(), points.n()) << "\n";
    std::cout << "bases visited: " << sum.bases << ", jobs dispatched: "
              << sum.parallel.jobsDispatched << "\n";
    return 0;
}
