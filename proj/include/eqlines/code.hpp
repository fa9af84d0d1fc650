#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqlines/graph.hpp"
#include "eqlines/lset.hpp"
#include "eqlines/symmatrix.hpp"

namespace eqlines {

struct NotUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPsd : std::runtime_error {
    std::vector<Rational> witness;
    explicit NotPsd(std::vector<Rational> w)
        : std::runtime_error("Gram matrix is not positive semidefinite"), witness(std::move(w)) {}
};
struct AmbiguousL : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceUnachievable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A spherical code: exact Gram form (source of truth for rational data) or
// floating vector form (columns are unit direction vectors, with an explicit
// tolerance).
struct Code {
    enum class Form { gram, vectors };
    Form form = Form::gram;
    SymMatrix gram;           // Form::gram
    Eigen::MatrixXd vecs;     // Form::vectors, d x m
    double tolerance = 1e-9;  // Form::vectors
    std::string label;

    std::size_t size() const {
        return form == Form::gram ? gram.order() : std::size_t(vecs.cols());
    }

    static Code from_gram(SymMatrix g, std::string label = {}) {
        Code c;
        c.form = Form::gram;
        c.gram = std::move(g);
        c.label = std::move(label);
        return c;
    }

    static Code from_vectors(Eigen::MatrixXd v, double tol = 1e-9, std::string label = {}) {
        Code c;
        c.form = Form::vectors;
        c.vecs = std::move(v);
        c.tolerance = tol;
        c.label = std::move(label);
        return c;
    }
};

struct OffendingPair {
    std::size_t i, j;
    std::string value;  // exact "p/q" or decimal text of the violating product
};

struct ValidationReport {
    bool ok = false;
    std::size_t dimension = 0;
    std::size_t size = 0;
    std::vector<OffendingPair> offending_pairs;
};

inline Eigen::MatrixXd gram_of(const Code& code) {
    if (code.form != Code::Form::vectors)
        throw std::invalid_argument("gram_of expects a vectors-form code");
    for (Eigen::Index j = 0; j < code.vecs.cols(); ++j)
        if (std::abs(code.vecs.col(j).norm() - 1.0) > code.tolerance)
            throw NotUnit("column " + std::to_string(j) + " is not a unit vector");
    return code.vecs.transpose() * code.vecs;
}

inline ValidationReport validate(const Code& code, const LSet& L) {
    ValidationReport rep;
    rep.size = code.size();
    if (code.form == Code::Form::gram) {
        const SymMatrix& g = code.gram;
        for (std::size_t i = 0; i < g.order(); ++i)
            if (g.at(i, i) != 1)
                throw NotUnit("diagonal entry " + std::to_string(i) + " is " +
                              to_string(g.at(i, i)));
        PsdCertificate cert = ldlt_certify(g);
        if (!cert.is_psd) throw NotPsd(*cert.failure_witness);
        rep.dimension = cert.rank;
        for (std::size_t i = 0; i < g.order(); ++i)
            for (std::size_t j = i + 1; j < g.order(); ++j)
                if (!L.contains(g.at(i, j)))
                    rep.offending_pairs.push_back({i, j, to_string(g.at(i, j))});
    } else {
        Eigen::MatrixXd g = gram_of(code);  // throws NotUnit on bad columns
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(code.vecs);
        svd.setThreshold(1e-7);
        rep.dimension = std::size_t(svd.rank());
        char buf[64];
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            for (Eigen::Index j = i + 1; j < g.cols(); ++j)
                if (!L.contains_approx(g(i, j), code.tolerance)) {
                    std::snprintf(buf, sizeof buf, "%.12g", g(i, j));
                    rep.offending_pairs.push_back({std::size_t(i), std::size_t(j), buf});
                }
    }
    rep.ok = rep.offending_pairs.empty();
    return rep;
}

// Graph semantics are defined only for the Theorem-1 shape
// L = [-1,-beta] u {alpha}: edges carry the negative interval.
inline void require_attachment_shape(const LSet& L) {
    if (L.points.size() > 1)
        throw AmbiguousL("attachment graph needs at most one point in L");
    for (const auto& iv : L.intervals)
        if (iv.hi > 0) throw AmbiguousL("attachment graph needs non-positive intervals in L");
}

inline Graph attachment_graph(const Code& code, const LSet& L) {
    require_attachment_shape(L);
    Graph g(code.size());
    if (code.form == Code::Form::gram) {
        for (std::size_t i = 0; i < code.gram.order(); ++i)
            for (std::size_t j = i + 1; j < code.gram.order(); ++j) {
                const Rational& v = code.gram.at(i, j);
                for (const auto& iv : L.intervals)
                    if (iv.lo <= v && v <= iv.hi) {
                        g.add_edge(i, j);
                        break;
                    }
            }
    } else {
        Eigen::MatrixXd gm = gram_of(code);
        for (Eigen::Index i = 0; i < gm.rows(); ++i)
            for (Eigen::Index j = i + 1; j < gm.cols(); ++j)
                for (const auto& iv : L.intervals)
                    if (to_double(iv.lo) - code.tolerance <= gm(i, j) &&
                        gm(i, j) <= to_double(iv.hi) + code.tolerance) {
                        g.add_edge(std::size_t(i), std::size_t(j));
                        break;
                    }
    }
    return g;
}

// Floating realization of an exact PSD Gram: eigendecompose, truncate to the
// certified rank, round-trip verify against the exact entries.
inline Code realize(const Code& code, double tol) {
    if (code.form != Code::Form::gram)
        throw std::invalid_argument("realize expects a gram-form code");
    PsdCertificate cert = ldlt_certify(code.gram);
    if (!cert.is_psd) throw NotPsd(*cert.failure_witness);
    const std::size_t m = code.gram.order(), d = cert.rank;

    Eigen::MatrixXd g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = to_double(code.gram.at(i, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);

    // Eigenvalues ascend; keep the top d.
    Eigen::MatrixXd v(d, m);
    for (std::size_t k = 0; k < d; ++k) {
        double lam = es.eigenvalues()(Eigen::Index(m - 1 - k));
        if (lam < 0) lam = 0;
        v.row(Eigen::Index(k)) =
            std::sqrt(lam) * es.eigenvectors().col(Eigen::Index(m - 1 - k)).transpose();
    }
    Eigen::MatrixXd check = v.transpose() * v;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (std::abs(check(i, j) - g(i, j)) > tol)
                throw ToleranceUnachievable("round-trip error exceeds tolerance");
    return Code::from_vectors(std::move(v), tol, code.label);
}

// ---- Code file format (JSON, canonical key order, bit-exact rationals) ----

inline nlohmann::ordered_json code_to_json(const Code& code) {
    nlohmann::ordered_json j;
    if (code.form == Code::Form::gram) {
        j["kind"] = "gram";
        j["scalar"] = "rational";
        j["order"] = code.gram.order();
        j["label"] = code.label;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < code.gram.order(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (std::size_t k = 0; k < code.gram.order(); ++k)
                row.push_back(to_string(code.gram.at(i, k)));
            rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
    } else {
        j["kind"] = "vectors";
        j["scalar"] = "float64";
        j["dim"] = code.vecs.rows();
        j["size"] = code.vecs.cols();
        j["label"] = code.label;
        j["tolerance"] = code.tolerance;
        char buf[64];
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (Eigen::Index i = 0; i < code.vecs.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Eigen::Index k = 0; k < code.vecs.cols(); ++k) {
                std::snprintf(buf, sizeof buf, "%.17g", code.vecs(i, k));
                row.push_back(std::string(buf));
            }
            rows.push_back(std::move(row));
        }
        j["entries"] = std::move(rows);
    }
    return j;
}

inline Code code_from_json(const nlohmann::ordered_json& j) {
    const std::string kind = j.at("kind");
    if (kind == "gram") {
        std::size_t n = j.at("order");
        SymMatrix g(n);
        const auto& rows = j.at("entries");
        if (rows.size() != n) throw IoError("entry row count does not match order");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw IoError("entry column count does not match order");
            for (std::size_t k = 0; k < n; ++k) {
                Rational v = parse_rational(rows[i][k].get<std::string>());
                if (k < i && v != g.at(i, k)) throw IoError("gram entries are not symmetric");
                g.set(i, k, v);
            }
        }
        return Code::from_gram(std::move(g), j.value("label", std::string{}));
    }
    if (kind == "vectors") {
        std::size_t d = j.at("dim"), m = j.at("size");
        Eigen::MatrixXd v(d, m);
        const auto& rows = j.at("entries");
        if (rows.size() != d) throw IoError("entry row count does not match dim");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < m; ++k)
                v(Eigen::Index(i), Eigen::Index(k)) =
                    std::stod(rows[i][k].get<std::string>());
        return Code::from_vectors(std::move(v), j.value("tolerance", 1e-9),
                                  j.value("label", std::string{}));
    }
    throw IoError("unknown code kind: " + kind);
}

inline std::string code_to_text(const Code& code) { return code_to_json(code).dump(2) + "\n"; }

inline void save_code(const Code& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << code_to_text(code);
}

inline Code load_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed code file " + path + ": " + e.what());
    }
    return code_from_json(j);
}

}  // namespace eqlines
