#pragma once

#include <string>
#include <vector>

namespace refdiff {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs a command to completion, capturing both output streams.
CommandResult run_command(const std::vector<std::string>& argv, const std::string& cwd = {});

// A child process with both stdin and stdout connected through pipes, for
// request/response protocols such as `git cat-file --batch`.
class PipeProcess {
public:
    PipeProcess(const std::vector<std::string>& argv, const std::string& cwd = {});
    ~PipeProcess();

    PipeProcess(const PipeProcess&) = delete;
    PipeProcess& operator=(const PipeProcess&) = delete;

    void write_line(const std::string& line);
    // Reads up to and including '\n'; returns false on EOF.
    bool read_line(std::string& line);
    // Reads exactly n bytes.
    bool read_exact(std::size_t n, std::string& data);

    bool alive() const { return pid_ > 0; }

private:
    void close_all();

    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

} // namespace refdiff
