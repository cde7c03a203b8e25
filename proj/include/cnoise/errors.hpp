#ifndef CNOISE_ERRORS_HPP
#define CNOISE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cnoise {

// Base for all library errors. `code()` is a stable, machine-parsable
// identifier; the CLI prints "<code>: <message>" on one line.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct invalid_dimension_error : error {
    explicit invalid_dimension_error(const std::string& msg)
        : error("invalid-dimension", msg) {}
};

struct invalid_parameter_error : error {
    explicit invalid_parameter_error(const std::string& msg)
        : error("invalid-parameter", msg) {}
};

struct kernel_too_large_error : error {
    explicit kernel_too_large_error(const std::string& msg)
        : error("kernel-too-large", msg) {}
};

struct invalid_config_error : error {
    explicit invalid_config_error(const std::string& msg)
        : error("invalid-config", msg) {}
};

struct window_too_large_error : error {
    explicit window_too_large_error(const std::string& msg)
        : error("window-too-large", msg) {}
};

struct contract_violation_error : error {
    explicit contract_violation_error(const std::string& msg)
        : error("contract-violation", msg) {}
};

struct invalid_argument_error : error {
    explicit invalid_argument_error(const std::string& msg)
        : error("invalid-argument", msg) {}
};

// Bank file format errors, one per failure mode so callers can tell
// a corrupt header from a short read.
struct bad_magic_error : error {
    explicit bad_magic_error(const std::string& msg)
        : error("bad-magic", msg) {}
};

struct version_mismatch_error : error {
    explicit version_mismatch_error(const std::string& msg)
        : error("version-mismatch", msg) {}
};

struct truncated_payload_error : error {
    explicit truncated_payload_error(const std::string& msg)
        : error("truncated-payload", msg) {}
};

struct length_mismatch_error : error {
    explicit length_mismatch_error(const std::string& msg)
        : error("length-mismatch", msg) {}
};

struct file_not_found_error : error {
    explicit file_not_found_error(const std::string& msg)
        : error("file-not-found", msg) {}
};

struct io_error : error {
    explicit io_error(const std::string& msg)
        : error("io-error", msg) {}
};

} // namespace cnoise

#endif // CNOISE_ERRORS_HPP
