#include "vnm/subprocess_oracle.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <sys/wait.h>
#include <unistd.h>

#include "vnm/json_io.hpp"

namespace vnm {

namespace {

[[noreturn]] void protocol_error(const std::string& what) { throw Error(ErrorCode::oracle_protocol, what); }

}  // namespace

LinePipe::LinePipe(const std::string& command) {
    // A dead child must surface as a write error, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    int down[2];
    int up[2];
    if (pipe(down) != 0) protocol_error(std::string("pipe: ") + std::strerror(errno));
    if (pipe(up) != 0) {
        close(down[0]);
        close(down[1]);
        protocol_error(std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = fork();
    if (pid_ < 0) {
        for (int fd : {down[0], down[1], up[0], up[1]}) close(fd);
        protocol_error(std::string("fork: ") + std::strerror(errno));
    }
    if (pid_ == 0) {
        dup2(down[0], STDIN_FILENO);
        dup2(up[1], STDOUT_FILENO);
        for (int fd : {down[0], down[1], up[0], up[1]}) close(fd);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(down[0]);
    close(up[1]);
    to_child_ = down[1];
    from_child_ = up[0];
}

LinePipe::~LinePipe() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    if (pid_ > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
    }
}

std::string LinePipe::round_trip(const std::string& line) {
    std::string out = line + "\n";
    const char* data = out.data();
    std::size_t left = out.size();
    while (left > 0) {
        const ssize_t n = write(to_child_, data, left);
        if (n < 0) {
            if (errno == EINTR) continue;
            protocol_error(std::string("oracle process write failed: ") + std::strerror(errno));
        }
        data += n;
        left -= static_cast<std::size_t>(n);
    }
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string reply = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return reply;
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR) continue;
            protocol_error(std::string("oracle process read failed: ") + std::strerror(errno));
        }
        if (n == 0) protocol_error("oracle process closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

template <Scalar S>
SubprocessOracle<S>::SubprocessOracle(OutcomeSpace space, const std::string& command)
    : PreferenceOracle<S>(std::move(space)), pipe_(command) {}

template <Scalar S>
bool SubprocessOracle<S>::weakly_prefers(const Lottery<S>& p, const Lottery<S>& q) {
    const json::Json request{{"p", json::lottery_to_json(p)}, {"q", json::lottery_to_json(q)}};
    const std::string reply = pipe_.round_trip(request.dump());
    json::Json parsed;
    try {
        parsed = json::Json::parse(reply);
    } catch (const nlohmann::json::exception&) {
        protocol_error("oracle replied with malformed JSON: " + reply);
    }
    if (!parsed.is_object() || !parsed.contains("pref") || !parsed.at("pref").is_boolean()) {
        protocol_error("oracle reply lacks a boolean \"pref\": " + reply);
    }
    return parsed.at("pref").get<bool>();
}

template class SubprocessOracle<Rational>;
template class SubprocessOracle<double>;

}  // namespace vnm
