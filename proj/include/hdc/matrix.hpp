#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hdc {

using Index = std::size_t;

/// Sorted-ascending set of row (object) or column (feature) indices.
using IndexSet = std::vector<Index>;

/// m x n matrix of measurements, rows = objects, columns = features.
/// Row-major dense storage; shape is fixed after construction.
class DataMatrix {
public:
    DataMatrix() = default;

    DataMatrix(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("matrix must have at least one row and column");
    }

    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw std::invalid_argument("matrix must have at least one row and column");
        DataMatrix m(rows.size(), rows.front().size());
        for (Index i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("ragged row in matrix literal");
            for (Index j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    double operator()(Index i, Index j) const { return values_[i * cols_ + j]; }
    double& operator()(Index i, Index j) { return values_[i * cols_ + j]; }

    const std::vector<double>& data() const { return values_; }

    /// Column j restricted to the given rows, in the rows' order.
    std::vector<double> column(Index j, const IndexSet& rows) const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (Index i : rows) out.push_back((*this)(i, j));
        return out;
    }

    std::vector<double> column(Index j) const {
        std::vector<double> out;
        out.reserve(rows_);
        for (Index i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
        return out;
    }

    /// Optional header names; empty or one per column.
    std::vector<std::string> column_names;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> values_;
};

/// Length-m 0/1 vector of true object states: 1 = positive, 0 = negative.
struct LabelVector {
    std::vector<std::uint8_t> bits;

    LabelVector() = default;
    explicit LabelVector(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    Index size() const { return bits.size(); }
    bool positive(Index i) const { return bits[i] != 0; }

    IndexSet positives() const {
        IndexSet out;
        for (Index i = 0; i < bits.size(); ++i)
            if (bits[i]) out.push_back(i);
        return out;
    }

    IndexSet negatives() const {
        IndexSet out;
        for (Index i = 0; i < bits.size(); ++i)
            if (!bits[i]) out.push_back(i);
        return out;
    }
};

}  // namespace hdc
