// witness.hpp
//
// Witness files: a generator matrix in the plain-text format preceded by a
// comment line "# <n> <k> <d> so=<0|1>".  Every read re-verifies the claimed
// parameters against the matrix, so a stale or tampered file cannot enter
// the seed cache.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "binary_matrix.hpp"

namespace sodist {

struct Witness {
    CodeParams params;
    bool so = false;
    BinaryMatrix matrix;
};

// Checks the claims a witness carries.  Throws VerificationFailed naming the
// first property that does not hold.
inline void verify_witness(const Witness& w, const std::string& origin = "witness") {
    const BinaryMatrix& m = w.matrix;
    if (m.cols() != w.params.n)
        throw VerificationFailed("length", origin + ": matrix has " + std::to_string(m.cols()) +
                                               " columns, header claims n=" +
                                               std::to_string(w.params.n));
    if (m.rows() != w.params.k)
        throw VerificationFailed("dimension", origin + ": matrix has " + std::to_string(m.rows()) +
                                                  " rows, header claims k=" +
                                                  std::to_string(w.params.k));
    if (m.rank() != w.params.k)
        throw VerificationFailed("rank", origin + ": matrix rank " + std::to_string(m.rank()) +
                                             " < k=" + std::to_string(w.params.k));
    int d = m.min_distance();
    if (d != w.params.d)
        throw VerificationFailed("distance", origin + ": minimum distance is " +
                                                 std::to_string(d) + ", header claims d=" +
                                                 std::to_string(w.params.d));
    if (m.is_self_orthogonal() != w.so)
        throw VerificationFailed("self-orthogonality",
                                 origin + ": matrix is " +
                                     (w.so ? "not self-orthogonal" : "self-orthogonal") +
                                     ", header claims so=" + (w.so ? "1" : "0"));
}

inline Witness read_witness(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open witness file " + path.string());
    std::string header;
    if (!std::getline(in, header))
        throw ParseError(path.string() + ": empty witness file");
    Witness w;
    int so_flag = -1;
    if (std::sscanf(header.c_str(), "# %d %d %d so=%d", &w.params.n, &w.params.k, &w.params.d,
                    &so_flag) != 4 ||
        (so_flag != 0 && so_flag != 1))
        throw ParseError(path.string() + ": bad witness header '" + header + "'");
    w.so = so_flag == 1;
    w.matrix = BinaryMatrix::parse(in);
    verify_witness(w, path.string());
    return w;
}

// Atomic write: the file appears complete or not at all.
inline void write_witness(const std::filesystem::path& path, const Witness& w) {
    verify_witness(w, "write_witness");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << "# " << w.params.n << ' ' << w.params.k << ' ' << w.params.d << " so="
            << (w.so ? 1 : 0) << '\n';
        w.matrix.serialize(out);
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Canonical cache filename for a self-orthogonal witness.
inline std::string witness_filename(const CodeParams& p) {
    return "n" + std::to_string(p.k) + "_" + std::to_string(p.n) + "_d" + std::to_string(p.d) +
           "_so.txt";
}

}  // namespace sodist
