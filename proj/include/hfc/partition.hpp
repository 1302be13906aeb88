#pragma once

#include "hfc/tessellation.hpp"

#include <iosfwd>
#include <vector>

namespace hfc::part {

/// Data-qubit interaction graph: nodes = tessellation vertices, links = edges.
struct QubitGraph {
    int n = 0;
    std::vector<std::array<int, 2>> links;
    std::vector<std::vector<int>> adj; // neighbor node ids

    static QubitGraph from(const tess::Tessellation& t);
};

/// Laplacian eigenvector for the second-smallest eigenvalue, unit norm,
/// orthogonal to all-ones. Deflated power iteration on the shifted Laplacian;
/// residual below 1e-8 required.
std::vector<double> fiedler_vector(const QubitGraph& g);

struct Partition {
    std::vector<int> assignment; // qubit -> QPU id
    int capacity = 21;
    int num_qpus = 0;
    std::vector<int> local_edges, nonlocal_edges;
    double nl_fraction = 0.0;
};

/// Recursive spectral bisection: median split of the Fiedler vector (ties go
/// with lower node ids), recursing while a part exceeds capacity.
/// Disconnected oversized parts are split per component. QPU ids are
/// renumbered by smallest contained qubit.
Partition partition_recursive(const QubitGraph& g, int capacity = 21);

/// Populate local/nonlocal edge lists and nl_fraction.
void classify_edges(const tess::Tessellation& t, Partition& p);

void write_partition(std::ostream& os, const Partition& p);

} // namespace hfc::part
