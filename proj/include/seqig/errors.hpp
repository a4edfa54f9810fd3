#pragma once

#include <stdexcept>
#include <string>

namespace seqig {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad files, unknown names, invalid models, exceeded caps.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

struct SourceSpan {
    int line = 0;  // 1-based; 0 = unknown
    int col = 0;
};

// Lexical/syntax/semantic error in a DSL document, with position.
class ParseError : public InputError {
public:
    ParseError(SourceSpan span, const std::string& msg)
        : InputError(format(span, msg)), span_(span) {}
    SourceSpan span() const { return span_; }

private:
    static std::string format(SourceSpan s, const std::string& msg) {
        return "line " + std::to_string(s.line) + ", col " + std::to_string(s.col) + ": " + msg;
    }
    SourceSpan span_;
};

// A proven implication was violated, or an impossible state was reached.
// Indicates a defect in the engine, never in user input.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace seqig
