#include "mgc/prover.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace mgc {

const char* status_str(ProverStatus s) {
    switch (s) {
        case ProverStatus::Theorem: return "Theorem";
        case ProverStatus::CounterSatisfiable: return "CounterSatisfiable";
        case ProverStatus::Timeout: return "Timeout";
        case ProverStatus::Unknown: return "Unknown";
        case ProverStatus::Error: return "Error";
    }
    return "?";
}

namespace {

constexpr std::size_t kMaxCapture = 1 << 20;

// First "SZS status <word>" occurrence, or empty.
std::string parse_szs_status(const std::string& output) {
    const std::string tag = "SZS status ";
    std::size_t pos = output.find(tag);
    if (pos == std::string::npos) return "";
    pos += tag.size();
    std::size_t end = pos;
    while (end < output.size() &&
           (std::isalnum(static_cast<unsigned char>(output[end])) || output[end] == '_'))
        ++end;
    return output.substr(pos, end - pos);
}

ProverStatus classify(const std::string& szs, bool timed_out, bool exec_failed) {
    if (exec_failed) return ProverStatus::Error;
    if (szs == "Theorem") return ProverStatus::Theorem;
    if (szs == "CounterSatisfiable") return ProverStatus::CounterSatisfiable;
    if (szs == "Timeout" || szs == "ResourceOut" || szs == "GaveUp") return ProverStatus::Timeout;
    if (timed_out) return ProverStatus::Timeout;
    return ProverStatus::Unknown;
}

}  // namespace

ProverVerdict run_prover(const std::string& problem_file, const ProverConfig& config) {
    ProverVerdict verdict;
    auto t0 = std::chrono::steady_clock::now();

    if (config.binary.empty()) {
        verdict.status = ProverStatus::Error;
        verdict.detail = "no prover binary configured";
        return verdict;
    }
    if (access(config.binary.c_str(), X_OK) != 0) {
        verdict.status = ProverStatus::Error;
        verdict.detail = "prover binary not executable: " + config.binary;
        return verdict;
    }

    int pipefd[2];
    if (pipe(pipefd) != 0) {
        verdict.status = ProverStatus::Error;
        verdict.detail = std::string("pipe failed: ") + std::strerror(errno);
        return verdict;
    }

    pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        verdict.status = ProverStatus::Error;
        verdict.detail = std::string("fork failed: ") + std::strerror(errno);
        return verdict;
    }

    if (pid == 0) {
        dup2(pipefd[1], STDOUT_FILENO);
        dup2(pipefd[1], STDERR_FILENO);
        close(pipefd[0]);
        close(pipefd[1]);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(config.binary.c_str()));
        for (const auto& a : config.extra_args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(const_cast<char*>(problem_file.c_str()));
        argv.push_back(nullptr);
        execv(config.binary.c_str(), argv.data());
        _exit(127);
    }

    close(pipefd[1]);
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

    std::string output;
    bool timed_out = false;
    auto deadline = t0 + std::chrono::duration<double>(config.timeout_seconds);
    bool child_done = false;
    int wstatus = 0;

    for (;;) {
        auto now = std::chrono::steady_clock::now();
        if (!timed_out && now >= deadline) {
            timed_out = true;
            kill(pid, SIGKILL);
        }
        pollfd pfd{pipefd[0], POLLIN, 0};
        int timeout_ms = timed_out
                             ? 50
                             : static_cast<int>(std::min<double>(
                                   100.0, std::chrono::duration<double, std::milli>(deadline - now)
                                              .count()) +
                               1);
        int pr = poll(&pfd, 1, std::max(timeout_ms, 1));
        if (pr > 0 && (pfd.revents & (POLLIN | POLLHUP))) {
            char buf[4096];
            ssize_t r;
            while ((r = read(pipefd[0], buf, sizeof buf)) > 0) {
                if (output.size() < kMaxCapture)
                    output.append(buf, buf + std::min<std::size_t>(
                                                 static_cast<std::size_t>(r),
                                                 kMaxCapture - output.size()));
            }
            if (r == 0) {  // EOF
                close(pipefd[0]);
                waitpid(pid, &wstatus, 0);
                child_done = true;
                break;
            }
        }
        int w = waitpid(pid, &wstatus, WNOHANG);
        if (w == pid) {
            // Drain whatever remains.
            char buf[4096];
            ssize_t r;
            while ((r = read(pipefd[0], buf, sizeof buf)) > 0) {
                if (output.size() < kMaxCapture)
                    output.append(buf, buf + std::min<std::size_t>(
                                                 static_cast<std::size_t>(r),
                                                 kMaxCapture - output.size()));
            }
            close(pipefd[0]);
            child_done = true;
            break;
        }
    }
    if (!child_done) waitpid(pid, &wstatus, 0);

    auto t1 = std::chrono::steady_clock::now();
    verdict.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    verdict.raw_output = output;

    bool exec_failed = WIFEXITED(wstatus) && WEXITSTATUS(wstatus) == 127;
    std::string szs = parse_szs_status(output);
    verdict.status = classify(szs, timed_out, exec_failed);
    if (exec_failed) verdict.detail = "failed to execute " + config.binary;
    if (verdict.status == ProverStatus::Unknown && WIFEXITED(wstatus) &&
        WEXITSTATUS(wstatus) != 0 && szs.empty()) {
        verdict.status = ProverStatus::Error;
        std::ostringstream os;
        os << "prover exited with status " << WEXITSTATUS(wstatus) << " and no SZS line";
        verdict.detail = os.str();
    }
    return verdict;
}

}  // namespace mgc
