#include "tsequiv/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tsequiv/error.hpp"
#include "tsequiv/io.hpp"

namespace tsequiv {

std::string_view to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::Distance: return "distance";
    case MatrixKind::Affinity: return "affinity";
    case MatrixKind::Alignment: return "alignment";
    case MatrixKind::Consistency: return "consistency";
    }
    return "unknown";
}

LabeledSquareMatrix::LabeledSquareMatrix(std::vector<std::string> labels, Eigen::MatrixXd entries, MatrixKind kind)
    : labels_(std::move(labels)), entries_(std::move(entries)), kind_(kind) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(ErrorCode::InvalidArgument, "matrix must be square");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != entries_.rows()) {
        throw Error(ErrorCode::LabelMismatch, "label count does not match matrix size");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw Error(ErrorCode::LabelMismatch, "labels must be distinct");
    }
}

std::string check_invariants(const LabeledSquareMatrix &m) {
    const auto &a = m.entries();
    const Eigen::Index n = a.rows();
    auto where = [&](Eigen::Index i, Eigen::Index j) {
        std::ostringstream os;
        os << " at (" << m.labels()[static_cast<std::size_t>(i)] << ", " << m.labels()[static_cast<std::size_t>(j)]
           << "): " << format_double(a(i, j));
        return os.str();
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (!std::isfinite(v)) return "non-finite entry" + where(i, j);
            if (v != a(j, i)) return "not symmetric" + where(i, j);
            switch (m.kind()) {
            case MatrixKind::Distance:
                if (i == j && v != 0.0) return "nonzero diagonal" + where(i, j);
                if (v < 0.0) return "negative distance" + where(i, j);
                break;
            case MatrixKind::Affinity:
                if (i == j && v != 1.0) return "diagonal not 1" + where(i, j);
                if (v < 0.0 || v > 1.0) return "affinity outside [0, 1]" + where(i, j);
                break;
            case MatrixKind::Alignment:
                if (i == j && v != 1.0) return "diagonal not 1" + where(i, j);
                if (v < -1.0 || v > 1.0) return "alignment outside [-1, 1]" + where(i, j);
                break;
            case MatrixKind::Consistency:
                if (v < -1.0 || v > 1.0) return "consistency outside [-1, 1]" + where(i, j);
                break;
            }
        }
    }
    return {};
}

namespace {

std::vector<std::string> default_labels(std::size_t n, std::vector<std::string> labels) {
    if (labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw Error(ErrorCode::LabelMismatch, "label count does not match collection size");
    return labels;
}

void require_collection(std::span<const StepFunction> fs) {
    if (fs.size() < 2) throw Error(ErrorCode::InvalidArgument, "pairwise analysis needs at least 2 series");
}

// Each entry is computed once from its own pair; no cross-pair reduction.
template <typename PairFn>
Eigen::MatrixXd pairwise(std::size_t n, double diagonal, PairFn &&pair) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        out(ii, ii) = diagonal;
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            out(ii, jj) = out(jj, ii) = pair(i, j);
        }
    }
    return out;
}

} // namespace

LabeledSquareMatrix unscaled_distance_matrix(std::span<const StepFunction> fs, PNorm p,
                                             std::vector<std::string> labels) {
    require_collection(fs);
    labels = default_labels(fs.size(), std::move(labels));
    auto d = pairwise(fs.size(), 0.0, [&](std::size_t i, std::size_t j) { return lp_distance(fs[i], fs[j], p); });
    return {std::move(labels), std::move(d), MatrixKind::Distance};
}

LabeledSquareMatrix normalized_distance_matrix(std::span<const StepFunction> fs, PNorm p,
                                               std::vector<std::string> labels) {
    require_collection(fs);
    labels = default_labels(fs.size(), std::move(labels));
    std::vector<StepFunction> unit;
    unit.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (lp_norm(fs[i], p) == 0.0) {
            throw Error(ErrorCode::ZeroFunction, "series '" + labels[i] + "' embeds to the zero function");
        }
        unit.push_back(normalize(fs[i], p));
    }
    auto d = pairwise(fs.size(), 0.0, [&](std::size_t i, std::size_t j) { return lp_distance(unit[i], unit[j], p); });
    return {std::move(labels), std::move(d), MatrixKind::Distance};
}

LabeledSquareMatrix alignment_matrix(std::span<const StepFunction> fs, std::vector<std::string> labels) {
    require_collection(fs);
    labels = default_labels(fs.size(), std::move(labels));
    const PNorm two(2.0);
    std::vector<double> norms;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        norms.push_back(lp_norm(fs[i], two));
        if (norms.back() == 0.0) {
            throw Error(ErrorCode::ZeroFunction, "series '" + labels[i] + "' embeds to the zero function");
        }
    }
    auto omega = pairwise(fs.size(), 1.0, [&](std::size_t i, std::size_t j) {
        return std::clamp(inner_product(fs[i], fs[j]) / (norms[i] * norms[j]), -1.0, 1.0);
    });
    return {std::move(labels), std::move(omega), MatrixKind::Alignment};
}

LabeledSquareMatrix to_affinity(const LabeledSquareMatrix &distance) {
    if (distance.kind() != MatrixKind::Distance) {
        throw Error(ErrorCode::InvalidArgument, "to_affinity expects a distance matrix");
    }
    const double largest = distance.entries().maxCoeff();
    Eigen::MatrixXd a;
    if (largest > 0.0) {
        a = (1.0 - distance.entries().array() / largest).matrix();
        a.diagonal().setOnes();
    } else {
        a = Eigen::MatrixXd::Ones(distance.size(), distance.size());
    }
    return {distance.labels(), std::move(a), MatrixKind::Affinity};
}

LabeledSquareMatrix consistency_matrix(const LabeledSquareMatrix &affinity,
                                       const LabeledSquareMatrix &context_affinity) {
    if (affinity.labels() != context_affinity.labels()) {
        throw Error(ErrorCode::LabelMismatch, "consistency needs matrices over the same labels in the same order");
    }
    for (const auto *m : {&affinity, &context_affinity}) {
        if (m->kind() != MatrixKind::Affinity && m->kind() != MatrixKind::Alignment) {
            throw Error(ErrorCode::InvalidArgument, "consistency is defined between affinity or alignment matrices");
        }
    }
    Eigen::MatrixXd c = affinity.entries() - context_affinity.entries();
    return {affinity.labels(), std::move(c), MatrixKind::Consistency};
}

double matrix_norm(const LabeledSquareMatrix &m) {
    const double n = static_cast<double>(m.size());
    return m.entries().cwiseAbs().sum() / (n * n);
}

LabeledSquareMatrix to_dissimilarity(const LabeledSquareMatrix &m) {
    Eigen::MatrixXd d;
    switch (m.kind()) {
    case MatrixKind::Distance:
        return m;
    case MatrixKind::Affinity:
    case MatrixKind::Alignment:
        d = (1.0 - m.entries().array()).matrix();
        break;
    case MatrixKind::Consistency:
        d = m.entries().cwiseAbs();
        break;
    }
    d.diagonal().setZero();
    return {m.labels(), std::move(d), MatrixKind::Distance};
}

LabeledSquareMatrix to_similarity(const LabeledSquareMatrix &m) {
    Eigen::MatrixXd a;
    switch (m.kind()) {
    case MatrixKind::Distance:
        return to_affinity(m);
    case MatrixKind::Affinity:
        return m;
    case MatrixKind::Alignment:
        a = ((m.entries().array() + 1.0) / 2.0).matrix();
        break;
    case MatrixKind::Consistency:
        a = (1.0 - m.entries().cwiseAbs().array()).max(0.0).matrix();
        break;
    }
    a.diagonal().setOnes();
    return {m.labels(), std::move(a), MatrixKind::Affinity};
}

} // namespace tsequiv
