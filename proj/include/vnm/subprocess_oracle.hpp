#pragma once

#include <string>

#include <sys/types.h>

#include "vnm/preference.hpp"

namespace vnm {

// Line-oriented pipe to a child process started with /bin/sh -c.
class LinePipe {
public:
    explicit LinePipe(const std::string& command);
    ~LinePipe();
    LinePipe(const LinePipe&) = delete;
    LinePipe& operator=(const LinePipe&) = delete;

    // Writes one line and reads one line of reply (without the newline).
    std::string round_trip(const std::string& line);

private:
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

// External comparator: each query writes {"p": lottery, "q": lottery} as
// one JSON line and expects {"pref": true|false} back. The child must answer
// deterministically for the lifetime of the session.
template <Scalar S>
class SubprocessOracle : public PreferenceOracle<S> {
public:
    SubprocessOracle(OutcomeSpace space, const std::string& command);

protected:
    bool weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) override;

private:
    LinePipe pipe_;
};

}  // namespace vnm
