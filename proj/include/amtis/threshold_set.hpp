#ifndef AMTIS_THRESHOLD_SET_HPP
#define AMTIS_THRESHOLD_SET_HPP

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amtis/errors.hpp"

namespace amtis {

/// A strictly increasing set of intensity cut points in [0, 255].
/// Every threshold selector in the library returns one of these; the
/// segmentation routines consume them.
class ThresholdSet {
public:
    explicit ThresholdSet(std::vector<int> levels) : levels_(std::move(levels)) {
        if (levels_.empty())
            throw EmptyThresholdSet("threshold set must contain at least one level");
        if (levels_.size() > 255)
            throw std::invalid_argument("threshold set holds at most 255 levels");
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (levels_[i] < 0 || levels_[i] > 255)
                throw std::invalid_argument("threshold level outside [0, 255]");
            if (i > 0 && levels_[i] <= levels_[i - 1])
                throw std::invalid_argument("threshold levels must be strictly increasing");
        }
    }

    ThresholdSet(std::initializer_list<int> levels)
        : ThresholdSet(std::vector<int>(levels)) {}

    const std::vector<int>& levels() const { return levels_; }
    int count() const { return static_cast<int>(levels_.size()); }
    int operator[](int i) const { return levels_[static_cast<std::size_t>(i)]; }

    auto begin() const { return levels_.begin(); }
    auto end() const { return levels_.end(); }

    friend bool operator==(const ThresholdSet& a, const ThresholdSet& b) {
        return a.levels_ == b.levels_;
    }

private:
    std::vector<int> levels_;
};

} // namespace amtis

#endif
