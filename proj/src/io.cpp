#include "mubent/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mubent/errors.hpp"

namespace mubent::io {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw DomainError("expected a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t positive_size(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
        throw DomainError(std::string("expected a positive integer field \"") + key + "\"");
    }
    return j[key].get<std::size_t>();
}

RealMatrix real_rows(const Json& j, const char* key, std::size_t n) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != n) {
        throw DomainError(std::string("field \"") + key + "\" must be a list of " + std::to_string(n) + " rows");
    }
    const auto ni = static_cast<Eigen::Index>(n);
    RealMatrix m(ni, ni);
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = j[key][r];
        if (!row.is_array() || row.size() != n) {
            throw DomainError(std::string("field \"") + key + "\": row " + std::to_string(r) + " has the wrong length");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!row[c].is_number()) throw DomainError(std::string("field \"") + key + "\": non-numeric entry");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
        }
    }
    return m;
}

}  // namespace

Json mub_set_to_json(const MubSet& mub) {
    Json bases = Json::array();
    for (const auto& b : mub.bases()) {
        Json vectors = Json::array();
        for (std::size_t i = 0; i < b.dim(); ++i) {
            Json v = Json::array();
            const ComplexVector col = b.vector(i);
            for (Eigen::Index t = 0; t < col.size(); ++t) v.push_back(complex_to_json(col(t)));
            vectors.push_back(std::move(v));
        }
        bases.push_back(std::move(vectors));
    }
    return Json{{"d", mub.dim()}, {"bases", std::move(bases)}};
}

MubSet mub_set_from_json(const Json& j) {
    const std::size_t d = positive_size(j, "d");
    if (!j.contains("bases") || !j["bases"].is_array() || j["bases"].empty()) {
        throw DomainError("field \"bases\" must be a non-empty list");
    }
    std::vector<ComplexMatrix> candidates;
    const auto di = static_cast<Eigen::Index>(d);
    for (const Json& basis : j["bases"]) {
        if (!basis.is_array() || basis.size() != d) throw DomainError("every basis must hold d vectors");
        ComplexMatrix m(di, di);
        for (std::size_t i = 0; i < d; ++i) {
            const Json& v = basis[i];
            if (!v.is_array() || v.size() != d) throw DomainError("every vector must hold d entries");
            for (std::size_t t = 0; t < d; ++t)
                m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = complex_from_json(v[t]);
        }
        candidates.push_back(std::move(m));
    }
    const MubVerificationReport rep = verify_mub_set(candidates);
    if (!rep.pass) {
        std::ostringstream os;
        os << "MUB file rejected: worst orthonormality defect " << rep.worst_orthonormality_defect
           << ", worst unbiasedness defect " << rep.worst_unbiasedness_defect;
        if (rep.non_orthonormal_basis) os << "; basis " << *rep.non_orthonormal_basis << " is not orthonormal";
        if (rep.offender) {
            os << "; bases " << rep.offender->basis_k << "/" << rep.offender->basis_l << ", vectors "
               << rep.offender->vector_i << "/" << rep.offender->vector_j;
        }
        throw DomainError(os.str());
    }
    if (candidates.size() > d + 1) throw DomainError("MUB file holds more than d+1 bases");
    std::vector<Basis> bases;
    for (auto& c : candidates) bases.emplace_back(std::move(c));
    return MubSet(std::move(bases));
}

Json density_to_json(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json rr = Json::array(), ii = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return Json{{"dim", rho.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
    const std::size_t n = positive_size(j, "dim");
    const RealMatrix re = real_rows(j, "re", n);
    const RealMatrix im = j.contains("im") ? real_rows(j, "im", n) : RealMatrix::Zero(re.rows(), re.cols());
    ComplexMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return DensityMatrix(std::move(m));
}

Json report_to_json(const CriterionReport& rep) {
    Json j{{"values", rep.values},
           {"aggregate", rep.aggregate},
           {"bound", rep.bound},
           {"margin", rep.margin},
           {"violated", rep.violated}};
    if (!rep.labelings.empty()) j["labelings"] = rep.labelings;
    return j;
}

Json verification_to_json(const MubVerificationReport& rep) {
    Json j{{"pass", rep.pass},
           {"worst_orthonormality_defect", rep.worst_orthonormality_defect},
           {"worst_unbiasedness_defect", rep.worst_unbiasedness_defect}};
    if (rep.offender) {
        j["offender"] = {{"basis_k", rep.offender->basis_k},
                         {"basis_l", rep.offender->basis_l},
                         {"vector_i", rep.offender->vector_i},
                         {"vector_j", rep.offender->vector_j}};
    }
    if (rep.non_orthonormal_basis) j["non_orthonormal_basis"] = *rep.non_orthonormal_basis;
    return j;
}

Json unitary_params_to_json(const UnitaryParams& p) {
    return Json{{"dim", p.dim}, {"angles", p.angles}, {"phases", p.phases}, {"diagonal_phases", p.diagonal_phases}};
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw DomainError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw DomainError("write failed for " + path.string());
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace mubent::io
