#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "transversal/graph.hpp"

namespace transversal {

// Ordered list of graphs on a shared vertex set; index = colour.
struct GraphCollection {
    int n = 0;
    std::vector<Graph> colours;

    GraphCollection() = default;
    GraphCollection(int n_, int m) : n(n_), colours(m, Graph(n_)) {}

    int colour_count() const { return static_cast<int>(colours.size()); }

    const Graph& colour(int i) const { return colours[i]; }
    Graph& colour(int i) { return colours[i]; }

    bool operator==(const GraphCollection& o) const = default;
};

// min over colours i and vertices v of deg_{G_i}(v); throws on empty collection
int min_degree(const GraphCollection& c);

// Graph on {0..n-1} whose edges appear in >= min_count colours.
// Guarantee (checked in tests, exact arithmetic):
//   delta(output) >= delta(collection) - (n-1) * min_count / m.
Graph threshold_graph(const GraphCollection& c, int min_count);

// threshold over a colour subset only, restricted to `vertices`
Graph threshold_graph(const GraphCollection& c, int min_count,
                      const std::vector<int>& colour_subset, const Bitset& vertices);

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Instance text format: line 1 "n m"; then m blocks, each "colour i e_i"
// followed by e_i lines "u v" with 0 <= u < v < n. Blank lines ignored.
GraphCollection read_collection(std::istream& in);
void write_collection(const GraphCollection& c, std::ostream& out);

GraphCollection read_collection_file(const std::string& path);
void write_collection_file(const GraphCollection& c, const std::string& path);

} // namespace transversal
