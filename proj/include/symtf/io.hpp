#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "symtf/norms.hpp"

namespace symtf {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// ---------------------------------------------------------------------------
// JSON matrix / word specs
// ---------------------------------------------------------------------------

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix spec must be a non-empty array");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) throw ValidationError("ragged matrix spec");
        for (int c = 0; c < cols; ++c) {
            if (!j[i][c].is_number()) throw ValidationError("matrix entries must be numbers");
            m(i, c) = j[i][c].get<double>();
        }
    }
    return m;
}

inline json sympmat_to_json(const SympMat& s) {
    return json{{"half_dim", s.half_dim}, {"entries", mat_to_json(s.m)}};
}

inline json atom_to_json(const GeneratorAtom& a) {
    switch (a.kind) {
        case GeneratorAtom::Kind::interchange: {
            json idx = json::array();
            for (int j : a.idx) idx.push_back(j);
            return json{{"kind", "interchange"}, {"J", idx}, {"n", a.n}};
        }
        case GeneratorAtom::Kind::dilation: return json{{"kind", "dilation"}, {"L", mat_to_json(a.payload)}};
        case GeneratorAtom::Kind::chirp_mul: return json{{"kind", "chirp_mul"}, {"C", mat_to_json(a.payload)}};
        case GeneratorAtom::Kind::chirp_conv: return json{{"kind", "chirp_conv"}, {"C", mat_to_json(a.payload)}};
    }
    throw Error("unreachable");
}

inline GeneratorAtom atom_from_json(const json& j, int n) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "interchange") {
        std::vector<int> idx;
        for (const auto& e : j.at("J")) idx.push_back(e.get<int>());
        return GeneratorAtom::interchange(idx, n);
    }
    if (kind == "dilation") return GeneratorAtom::dilation(mat_from_json(j.at("L")));
    if (kind == "chirp_mul") return GeneratorAtom::chirp_mul(mat_from_json(j.at("C")));
    if (kind == "chirp_conv") return GeneratorAtom::chirp_conv(mat_from_json(j.at("C")));
    throw ValidationError("unknown generator atom kind: " + kind);
}

// Accepts {"half_dim": n, "entries": [[..]]} or {"half_dim": n, "word": [..]}.
inline SympMat parse_matrix_spec(const json& j) {
    if (!j.is_object()) throw ValidationError("matrix spec must be an object");
    if (j.contains("entries")) {
        Mat m = mat_from_json(j.at("entries"));
        int n = j.value("half_dim", m.rows / 2);
        if (m.rows != 2 * n || m.cols != 2 * n)
            throw ValidationError("matrix spec: entries shape disagrees with half_dim");
        return SympMat::from(m, 1e-9);
    }
    if (j.contains("word")) {
        if (!j.contains("half_dim")) throw ValidationError("word spec requires half_dim");
        int n = j.at("half_dim").get<int>();
        GeneratorWord w;
        for (const auto& aj : j.at("word")) w.atoms.push_back(atom_from_json(aj, n));
        return w.matrix(n);
    }
    throw ValidationError("matrix spec needs 'entries' or 'word'");
}

inline json class_report_to_json(const ClassReport& r) {
    return json{{"free", r.free},
                {"shift_invertible", r.shift_invertible},
                {"det_EA", r.det_EA},
                {"EA_upper_block_triangular", r.EA_upper_block_triangular},
                {"EA_lower_block_triangular", r.EA_lower_block_triangular}};
}

// ---------------------------------------------------------------------------
// CSV and PGM writers
// ---------------------------------------------------------------------------

namespace detail {
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace detail

inline void write_signal_csv(std::ostream& os, const Signal& f) {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "index,t,re,im\n";
    for (int k = 0; k < f.n(); ++k)
        os << k << ',' << detail::fmt17(f.grid.t(k)) << ',' << detail::fmt17(f.v[static_cast<size_t>(k)].real())
           << ',' << detail::fmt17(f.v[static_cast<size_t>(k)].imag()) << "\n";
}

inline void write_field_csv(std::ostream& os, const Field2D& f) {
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "ix,iy,re,im\n";
    for (int ix = 0; ix < f.nx(); ++ix)
        for (int iy = 0; iy < f.ny(); ++iy)
            os << ix << ',' << iy << ',' << detail::fmt17(f.at(ix, iy).real()) << ','
               << detail::fmt17(f.at(ix, iy).imag()) << "\n";
}

inline Signal read_signal_csv(std::istream& is, const Grid1D& g) {
    Signal f(g);
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::string> cells;
        while (std::getline(ss, tok, ',')) cells.push_back(tok);
        if (cells.size() != 4) throw ValidationError("signal csv: expected 4 columns");
        int k = std::stoi(cells[0]);
        if (k < 0 || k >= g.n) throw ValidationError("signal csv: index out of range");
        f.v[static_cast<size_t>(k)] = cplx(std::stod(cells[2]), std::stod(cells[3]));
        ++count;
    }
    if (count != g.n) throw ValidationError("signal csv: sample count disagrees with grid");
    return f;
}

// 8-bit binary PGM of the modulus, linear scaling to [0, 255].
inline void write_pgm(std::ostream& os, const Field2D& f) {
    double m = max_modulus(f);
    os << "P5\n" << f.ny() << ' ' << f.nx() << "\n255\n";
    for (int ix = 0; ix < f.nx(); ++ix)
        for (int iy = 0; iy < f.ny(); ++iy) {
            double s = m > 0.0 ? std::abs(f.at(ix, iy)) / m : 0.0;
            os.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s))));
        }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot open " + path + " for writing");
    os << content;
}

} // namespace symtf
