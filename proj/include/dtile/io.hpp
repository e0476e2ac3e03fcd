#pragma once

#include <iosfwd>
#include <string>

#include "dtile/hypergraph.hpp"

namespace dtile {

// Instance text format:
//   # comment lines anywhere
//   n m
//   u v w        (m lines, 0 <= u < v < w < n)
//
// Certificate text format:
//   perfect s | partial s
//   a b c d | x y z | x y z   (s lines: the copy's four vertices, then its two witness edges)

Hypergraph3 read_instance(std::istream& in);
Hypergraph3 read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Hypergraph3& g);

/// Header is `perfect` when `perfect` is true, `partial` otherwise.
void write_certificate(std::ostream& out, const Tiling& t, bool perfect);
std::string certificate_string(const Tiling& t, bool perfect);

struct Certificate {
    bool perfect = false;
    Tiling tiling;
};

/// Throws InputError on malformed text; does not check the tiling against a graph.
Certificate read_certificate(std::istream& in);
Certificate read_certificate_file(const std::string& path);

}  // namespace dtile
