#ifndef BOXFENCE_SAMPLE_HPP
#define BOXFENCE_SAMPLE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boxfence {

// Immutable batch of observations in original input order. Values are
// validated once at construction: finite, at least one of them. Labels are
// optional per-observation identifiers (row numbers, IDs); when present
// there must be exactly one per value.
class Sample {
public:
    explicit Sample(std::vector<double> values, std::vector<std::string> labels = {})
        : values_(std::move(values)), labels_(std::move(labels)) {
        if (values_.empty())
            throw std::invalid_argument("Sample: at least one observation required");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::domain_error("Sample: observations must be finite");
        if (!labels_.empty() && labels_.size() != values_.size())
            throw std::invalid_argument("Sample: label count must match value count");
    }

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
    std::vector<std::string> labels_;
};

} // namespace boxfence

#endif // BOXFENCE_SAMPLE_HPP
