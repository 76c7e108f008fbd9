#include "transversal/collection.hpp"

#include <fstream>
#include <sstream>

namespace transversal {

int min_degree(const GraphCollection& c) {
    if (c.colours.empty()) throw std::invalid_argument("no colours");
    int d = -1;
    for (const Graph& g : c.colours) {
        int dg = g.min_degree();
        if (d < 0 || dg < d) d = dg;
    }
    return d;
}

Graph threshold_graph(const GraphCollection& c, int min_count) {
    if (min_count < 1 || min_count > c.colour_count())
        throw std::invalid_argument("threshold_graph: min_count out of range");
    Graph out(c.n);
    for (int u = 0; u < c.n; ++u)
        for (int v = u + 1; v < c.n; ++v) {
            int count = 0;
            for (const Graph& g : c.colours)
                if (g.has_edge(u, v) && ++count >= min_count) break;
            if (count >= min_count) out.add_edge(u, v);
        }
    return out;
}

Graph threshold_graph(const GraphCollection& c, int min_count,
                      const std::vector<int>& colour_subset, const Bitset& vertices) {
    Graph out(c.n);
    auto verts = vertices.to_vector();
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
            int u = verts[a], v = verts[b];
            int count = 0;
            for (int i : colour_subset)
                if (c.colour(i).has_edge(u, v) && ++count >= min_count) break;
            if (count >= min_count) out.add_edge(u, v);
        }
    return out;
}

namespace {

// next non-blank line; returns false at EOF
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = true;
        for (char ch : line)
            if (!isspace(static_cast<unsigned char>(ch))) { blank = false; break; }
        if (!blank) return true;
    }
    return false;
}

} // namespace

GraphCollection read_collection(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing header");
    int n, m;
    {
        std::istringstream ss(line);
        std::string trailing;
        if (!(ss >> n >> m) || (ss >> trailing) || n < 0 || m < 0)
            throw ParseError(lineno, "malformed header, expected \"n m\"");
    }
    GraphCollection c(n, m);
    for (int i = 0; i < m; ++i) {
        if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing colour header");
        std::string kw;
        int idx, ecount;
        {
            std::istringstream ss(line);
            std::string trailing;
            if (!(ss >> kw >> idx >> ecount) || kw != "colour" || (ss >> trailing))
                throw ParseError(lineno, "malformed colour header, expected \"colour i e_i\"");
        }
        if (idx != i) throw ParseError(lineno, "colour index " + std::to_string(idx) +
                                                   ", expected " + std::to_string(i));
        if (ecount < 0) throw ParseError(lineno, "negative edge count");
        for (int e = 0; e < ecount; ++e) {
            if (!next_line(in, line, lineno)) throw ParseError(lineno, "missing edge line");
            int u, v;
            {
                std::istringstream ss(line);
                std::string trailing;
                if (!(ss >> u >> v) || (ss >> trailing))
                    throw ParseError(lineno, "malformed edge, expected \"u v\"");
            }
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw ParseError(lineno, "vertex index out of range [0," + std::to_string(n) + ")");
            if (u >= v) throw ParseError(lineno, "edge must satisfy u < v");
            if (c.colour(i).has_edge(u, v))
                throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " +
                                             std::to_string(v) + " in colour " + std::to_string(i));
            c.colour(i).add_edge(u, v);
        }
    }
    return c;
}

void write_collection(const GraphCollection& c, std::ostream& out) {
    out << c.n << ' ' << c.colour_count() << '\n';
    for (int i = 0; i < c.colour_count(); ++i) {
        auto edges = c.colour(i).edges();
        out << "colour " << i << ' ' << edges.size() << '\n';
        for (auto [u, v] : edges) out << u << ' ' << v << '\n';
    }
}

GraphCollection read_collection_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_collection(in);
}

void write_collection_file(const GraphCollection& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path);
    write_collection(c, out);
}

} // namespace transversal
