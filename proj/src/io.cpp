#include "dtile/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtile/errors.hpp"

namespace dtile {

namespace {

/// Next line that is neither blank nor a comment.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void bad(int line_no, const std::string& what) {
    throw InputError("line " + std::to_string(line_no) + ": " + what);
}

void expect_exhausted(std::istringstream& ls, int line_no) {
    std::string extra;
    if (ls >> extra) bad(line_no, "unexpected token '" + extra + "'");
}

}  // namespace

Hypergraph3 read_instance(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_content_line(in, line, line_no)) throw InputError("empty instance");
    std::istringstream header(line);
    long long n = 0, m = 0;
    if (!(header >> n >> m) || n < 0 || m < 0) bad(line_no, "expected header 'n m'");
    expect_exhausted(header, line_no);
    std::vector<Triple> triples;
    triples.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_content_line(in, line, line_no)) throw InputError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        std::istringstream ls(line);
        long long u, v, w;
        if (!(ls >> u >> v >> w)) bad(line_no, "expected 'u v w'");
        expect_exhausted(ls, line_no);
        if (!(0 <= u && u < v && v < w && w < n)) bad(line_no, "edge must satisfy 0 <= u < v < w < n");
        triples.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Vertex>(w)});
    }
    if (next_content_line(in, line, line_no)) bad(line_no, "trailing content after " + std::to_string(m) + " edges");
    return Hypergraph3::build(static_cast<int>(n), triples);
}

Hypergraph3 read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open instance file " + path);
    return read_instance(in);
}

void write_instance(std::ostream& out, const Hypergraph3& g) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (const Triple& t : g.edges()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_certificate(std::ostream& out, const Tiling& t, bool perfect) {
    out << (perfect ? "perfect " : "partial ") << t.size() << '\n';
    for (const DCopy& d : t.copies) {
        const auto& v = d.vertices;
        out << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << " | " << d.edge_a[0] << ' ' << d.edge_a[1] << ' ' << d.edge_a[2] << " | "
            << d.edge_b[0] << ' ' << d.edge_b[1] << ' ' << d.edge_b[2] << '\n';
    }
}

std::string certificate_string(const Tiling& t, bool perfect) {
    std::ostringstream s;
    write_certificate(s, t, perfect);
    return s.str();
}

Certificate read_certificate(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!next_content_line(in, line, line_no)) throw InputError("empty certificate");
    std::istringstream header(line);
    std::string kind;
    long long s = -1;
    if (!(header >> kind >> s) || (kind != "perfect" && kind != "partial") || s < 0) bad(line_no, "expected 'perfect s' or 'partial s'");
    expect_exhausted(header, line_no);
    Certificate cert;
    cert.perfect = kind == "perfect";
    for (long long i = 0; i < s; ++i) {
        if (!next_content_line(in, line, line_no)) throw InputError("expected " + std::to_string(s) + " copies, found " + std::to_string(i));
        std::istringstream ls(line);
        DCopy d;
        std::string bar1, bar2;
        auto& v = d.vertices;
        if (!(ls >> v[0] >> v[1] >> v[2] >> v[3] >> bar1 >> d.edge_a[0] >> d.edge_a[1] >> d.edge_a[2] >> bar2 >> d.edge_b[0] >> d.edge_b[1] >>
              d.edge_b[2]) ||
            bar1 != "|" || bar2 != "|")
            bad(line_no, "expected 'a b c d | x y z | x y z'");
        expect_exhausted(ls, line_no);
        cert.tiling.copies.push_back(d);
    }
    if (next_content_line(in, line, line_no)) bad(line_no, "trailing content after " + std::to_string(s) + " copies");
    return cert;
}

Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open certificate file " + path);
    return read_certificate(in);
}

}  // namespace dtile
