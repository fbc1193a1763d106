#include "bellsim/css_code.h"

#include <fmt/format.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace bellsim {

namespace {

std::string row_to_bits(const BitVec &row) {
    std::string s(row.num_bits, '0');
    for (size_t i = 0; i < row.num_bits; i++) {
        if (row.get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

GF2Matrix matrix_from_bits(const std::vector<std::string> &rows, size_t num_cols) {
    GF2Matrix m(rows.size(), num_cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != num_cols) {
            throw std::invalid_argument("parity check row has wrong length");
        }
        for (size_t c = 0; c < num_cols; c++) {
            if (rows[r][c] == '1') {
                m.set(r, c, true);
            } else if (rows[r][c] != '0') {
                throw std::invalid_argument("parity check row must be over {0,1}");
            }
        }
    }
    return m;
}

}  // namespace

std::string CssCodeSpec::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["n"] = n;
    j["k"] = k;
    j["d"] = d;
    auto dump_matrix = [](const GF2Matrix &m) {
        std::vector<std::string> rows;
        rows.reserve(m.num_rows);
        for (const auto &row : m.rows) {
            rows.push_back(row_to_bits(row));
        }
        return rows;
    };
    j["h_x"] = dump_matrix(h_x);
    j["h_z"] = dump_matrix(h_z);
    auto dump_paulis = [](const std::vector<PauliString> &ps) {
        std::vector<std::string> out;
        out.reserve(ps.size());
        for (const auto &p : ps) {
            out.push_back(p.str());
        }
        return out;
    };
    j["logical_x"] = dump_paulis(logical_x);
    j["logical_z"] = dump_paulis(logical_z);
    return j.dump(2);
}

CssCodeSpec CssCodeSpec::from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CssCodeSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.n = j.at("n").get<size_t>();
    spec.k = j.at("k").get<size_t>();
    spec.d = j.at("d").get<size_t>();
    spec.h_x = matrix_from_bits(j.at("h_x").get<std::vector<std::string>>(), spec.n);
    spec.h_z = matrix_from_bits(j.at("h_z").get<std::vector<std::string>>(), spec.n);
    for (const auto &s : j.at("logical_x").get<std::vector<std::string>>()) {
        spec.logical_x.push_back(PauliString::from_string(s));
    }
    for (const auto &s : j.at("logical_z").get<std::vector<std::string>>()) {
        spec.logical_z.push_back(PauliString::from_string(s));
    }
    return spec;
}

CssCodeSpec build_parity_code(size_t m) {
    if (m < 2) {
        throw std::invalid_argument("parity code needs m >= 2");
    }
    size_t n = 2 * m;
    CssCodeSpec spec;
    spec.name = fmt::format("parity_m{}", m);
    spec.n = n;
    spec.k = n - 2;
    spec.d = 2;
    spec.h_x = GF2Matrix(1, n);
    spec.h_z = GF2Matrix(1, n);
    for (size_t q = 0; q < n; q++) {
        spec.h_x.set(0, q, true);
        spec.h_z.set(0, q, true);
    }
    // Logical pairs (X_i, Z_i) supported on qubits {0, i+1}: X_i = X0 X_{i+1},
    // Z_i = Z_{i+1} Z_{n-1}, which commute across pairs and anticommute within.
    for (size_t i = 0; i < spec.k; i++) {
        PauliString lx(n);
        lx.x.set(0, true);
        lx.x.set(i + 1, true);
        PauliString lz(n);
        lz.z.set(i + 1, true);
        lz.z.set(n - 1, true);
        spec.logical_x.push_back(std::move(lx));
        spec.logical_z.push_back(std::move(lz));
    }
    return spec;
}

CssCodeSpec steane_code() {
    CssCodeSpec spec;
    spec.name = "steane";
    spec.n = 7;
    spec.k = 1;
    spec.d = 3;
    // Hamming(7,4) checks, used for both bases.
    const int rows[3][7] = {
        {1, 0, 1, 0, 1, 0, 1},
        {0, 1, 1, 0, 0, 1, 1},
        {0, 0, 0, 1, 1, 1, 1},
    };
    spec.h_x = GF2Matrix(3, 7);
    spec.h_z = GF2Matrix(3, 7);
    for (size_t r = 0; r < 3; r++) {
        for (size_t c = 0; c < 7; c++) {
            spec.h_x.set(r, c, rows[r][c] != 0);
            spec.h_z.set(r, c, rows[r][c] != 0);
        }
    }
    PauliString lx(7);
    PauliString lz(7);
    for (size_t q = 0; q < 7; q++) {
        lx.x.set(q, true);
        lz.z.set(q, true);
    }
    spec.logical_x.push_back(lx);
    spec.logical_z.push_back(lz);
    return spec;
}

namespace {

/// Smallest weight of a vector in ker(stab_perp) \ rowspace(stab), or 0 if none
/// exists up to max_weight. stab_perp rows must be orthogonal to the sought
/// vectors (commutation constraint).
size_t min_logical_weight(const GF2Matrix &stab, const GF2Matrix &stab_perp, size_t n, size_t max_weight) {
    std::vector<size_t> support;
    BitVec v(n);
    // Depth-first enumeration of supports by increasing weight.
    for (size_t w = 1; w <= max_weight; w++) {
        support.assign(w, 0);
        for (size_t i = 0; i < w; i++) {
            support[i] = i;
        }
        while (true) {
            v.clear();
            for (size_t i : support) {
                v.set(i, true);
            }
            bool commutes = true;
            for (const auto &row : stab_perp.rows) {
                size_t dot = 0;
                for (size_t word = 0; word < v.words.size(); word++) {
                    dot ^= std::popcount(v.words[word] & row.words[word]);
                }
                if (dot & 1) {
                    commutes = false;
                    break;
                }
            }
            if (commutes && !stab.row_space_contains(v)) {
                return w;
            }
            // Next combination.
            size_t i = w;
            while (i > 0 && support[i - 1] == n - w + i - 1) {
                i--;
            }
            if (i == 0) {
                break;
            }
            support[i - 1]++;
            for (size_t j = i; j < w; j++) {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    return 0;
}

}  // namespace

size_t css_brute_force_distance(const CssCodeSpec &spec) {
    size_t dx = min_logical_weight(spec.h_x, spec.h_z, spec.n, spec.n);
    size_t dz = min_logical_weight(spec.h_z, spec.h_x, spec.n, spec.n);
    if (dx == 0 || dz == 0) {
        return 0;
    }
    return std::min(dx, dz);
}

CodeCheckReport verify_code(const CssCodeSpec &spec, size_t brute_limit) {
    CodeCheckReport report;
    auto fail = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    if (spec.h_x.num_cols != spec.n || spec.h_z.num_cols != spec.n) {
        fail("check matrices have wrong number of columns");
        return report;
    }
    GF2Matrix prod = spec.h_x.times(spec.h_z.transposed());
    if (!prod.is_zero()) {
        fail("X and Z checks do not commute");
    }
    size_t rank_x = spec.h_x.rank();
    size_t rank_z = spec.h_z.rank();
    if (spec.n < rank_x + rank_z || spec.n - rank_x - rank_z != spec.k) {
        fail(fmt::format("rank mismatch: n={} rank_x={} rank_z={} claims k={}", spec.n, rank_x, rank_z, spec.k));
    }
    if (spec.logical_x.size() != spec.k || spec.logical_z.size() != spec.k) {
        fail("wrong number of logical operators");
        return report;
    }
    for (size_t i = 0; i < spec.k; i++) {
        if (spec.logical_x[i].num_qubits != spec.n || spec.logical_z[i].num_qubits != spec.n) {
            fail("logical operator has wrong number of qubits");
            return report;
        }
    }
    auto check_commutes_with_group = [&](const PauliString &p, const char *label) {
        for (size_t r = 0; r < spec.h_x.num_rows; r++) {
            PauliString row(spec.n);
            row.x = spec.h_x.rows[r];
            if (!p.commutes_with(row)) {
                fail(fmt::format("{} anticommutes with X check {}", label, r));
            }
        }
        for (size_t r = 0; r < spec.h_z.num_rows; r++) {
            PauliString row(spec.n);
            row.z = spec.h_z.rows[r];
            if (!p.commutes_with(row)) {
                fail(fmt::format("{} anticommutes with Z check {}", label, r));
            }
        }
    };
    for (size_t i = 0; i < spec.k; i++) {
        check_commutes_with_group(spec.logical_x[i], fmt::format("logical X {}", i).c_str());
        check_commutes_with_group(spec.logical_z[i], fmt::format("logical Z {}", i).c_str());
        for (size_t j = 0; j < spec.k; j++) {
            bool want_anticommute = (i == j);
            bool anticommutes = !spec.logical_x[i].commutes_with(spec.logical_z[j]);
            if (anticommutes != want_anticommute) {
                fail(fmt::format("logical X {} vs logical Z {}: wrong commutation", i, j));
            }
            if (j > i && !spec.logical_x[i].commutes_with(spec.logical_x[j])) {
                fail(fmt::format("logical X {} and X {} anticommute", i, j));
            }
            if (j > i && !spec.logical_z[i].commutes_with(spec.logical_z[j])) {
                fail(fmt::format("logical Z {} and Z {} anticommute", i, j));
            }
        }
        if (spec.logical_x[i].z.popcount() != 0 || spec.logical_z[i].x.popcount() != 0) {
            fail(fmt::format("logical pair {} is not X-type/Z-type", i));
        }
    }
    if (spec.k > 0 && spec.n <= brute_limit) {
        report.distance_found = css_brute_force_distance(spec);
        if (spec.d != 0 && report.distance_found != spec.d) {
            fail(fmt::format("distance {} found, {} claimed", report.distance_found, spec.d));
        }
    }
    return report;
}

}  // namespace bellsim
