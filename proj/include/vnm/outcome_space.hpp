#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vnm {

// A finite, ordered set of distinct outcome labels. Copies share the same
// immutable storage; two spaces are equal when their labels match in order.
class OutcomeSpace {
public:
    explicit OutcomeSpace(std::vector<std::string> labels);

    std::size_t size() const noexcept { return impl_->labels.size(); }
    const std::vector<std::string>& labels() const noexcept { return impl_->labels; }
    const std::string& label(std::size_t index) const { return impl_->labels.at(index); }

    // Throws UnknownOutcome.
    std::size_t index_of(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const;
    bool contains(const std::string& label) const { return find(label).has_value(); }

    friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
        return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
    }

private:
    struct Impl {
        std::vector<std::string> labels;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::shared_ptr<const Impl> impl_;
};

// Throws Error(space_mismatch) unless a == b.
void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b);

}  // namespace vnm
