#include "refdiff/subprocess.hpp"

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace refdiff {

namespace {

[[noreturn]] void child_exec(const std::vector<std::string>& argv, const std::string& cwd) {
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(127);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
}

void read_all_fd(int fd, std::string& out) {
    char buf[8192];
    for (;;) {
        ssize_t n = read(fd, buf, sizeof buf);
        if (n > 0) {
            out.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
            return;
        } else if (errno != EINTR) {
            return;
        }
    }
}

} // namespace

CommandResult run_command(const std::vector<std::string>& argv, const std::string& cwd) {
    int out_pipe[2], err_pipe[2];
    if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
        throw std::runtime_error("pipe() failed: " + std::string(strerror(errno)));

    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork() failed: " + std::string(strerror(errno)));
    if (pid == 0) {
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        int devnull = open("/dev/null", O_RDONLY);
        if (devnull >= 0) {
            dup2(devnull, STDIN_FILENO);
            close(devnull);
        }
        child_exec(argv, cwd);
    }
    close(out_pipe[1]);
    close(err_pipe[1]);

    CommandResult result;
    // Drain both pipes with poll so a full stderr never deadlocks stdout.
    struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
    bool open_out = true, open_err = true;
    char buf[8192];
    while (open_out || open_err) {
        fds[0].fd = open_out ? out_pipe[0] : -1;
        fds[1].fd = open_err ? err_pipe[0] : -1;
        if (poll(fds, 2, -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (open_out && (fds[0].revents & (POLLIN | POLLHUP))) {
            ssize_t n = read(out_pipe[0], buf, sizeof buf);
            if (n > 0) result.out.append(buf, static_cast<std::size_t>(n));
            else open_out = false;
        }
        if (open_err && (fds[1].revents & (POLLIN | POLLHUP))) {
            ssize_t n = read(err_pipe[0], buf, sizeof buf);
            if (n > 0) result.err.append(buf, static_cast<std::size_t>(n));
            else open_err = false;
        }
    }
    close(out_pipe[0]);
    close(err_pipe[0]);

    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {}
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

PipeProcess::PipeProcess(const std::vector<std::string>& argv, const std::string& cwd) {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw std::runtime_error("pipe() failed: " + std::string(strerror(errno)));
    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("fork() failed: " + std::string(strerror(errno)));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        child_exec(argv, cwd);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
}

PipeProcess::~PipeProcess() { close_all(); }

void PipeProcess::close_all() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        int status = 0;
        while (waitpid(pid_, &status, 0) < 0 && errno == EINTR) {}
        pid_ = -1;
    }
}

void PipeProcess::write_line(const std::string& line) {
    std::string data = line + "\n";
    std::size_t off = 0;
    while (off < data.size()) {
        ssize_t n = write(to_child_, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error("write to child failed: " + std::string(strerror(errno)));
        }
        off += static_cast<std::size_t>(n);
    }
}

bool PipeProcess::read_line(std::string& line) {
    for (;;) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return true;
        }
        char buf[8192];
        ssize_t n = read(from_child_, buf, sizeof buf);
        if (n > 0) {
            buffer_.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
            if (buffer_.empty()) return false;
            line = std::move(buffer_);
            buffer_.clear();
            return true;
        } else if (errno != EINTR) {
            return false;
        }
    }
}

bool PipeProcess::read_exact(std::size_t n, std::string& data) {
    while (buffer_.size() < n) {
        char buf[8192];
        ssize_t got = read(from_child_, buf, sizeof buf);
        if (got > 0) buffer_.append(buf, static_cast<std::size_t>(got));
        else if (got == 0) return false;
        else if (errno != EINTR) return false;
    }
    data = buffer_.substr(0, n);
    buffer_.erase(0, n);
    return true;
}

} // namespace refdiff
