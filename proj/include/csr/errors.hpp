#pragma once

#include <stdexcept>
#include <string>

namespace csr {

enum class errc {
    malformed_instance,
    malformed_assignment,
    budget_exceeded,
    wrong_algorithm,
    not_binary,
    invalid_witness,
    invalid_sequence,
    generation_failure,
    io_error,
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

inline void require(bool cond, errc kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace csr
