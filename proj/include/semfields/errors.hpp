#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semfields {

// Base of all library errors. exit_code() is the process exit status the
// CLI uses for this error class: 2 = data/format error, 3 = numerical failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const noexcept { return 2; }
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class MalformedLine : public DataError {
public:
    MalformedLine(std::size_t line_no, const std::string& detail)
        : DataError("malformed line " + std::to_string(line_no) + ": " + detail),
          line_no_(line_no) {}
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::size_t line_no_;
};

class UnknownFieldName : public DataError {
public:
    explicit UnknownFieldName(const std::string& name)
        : DataError("unknown semantic field name: " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class EmptyLexicon : public DataError {
public:
    EmptyLexicon() : DataError("lexicon admitted zero word forms") {}
};

class EmptyCorpus : public DataError {
public:
    explicit EmptyCorpus(const std::string& root)
        : DataError("no .txt documents found under " + root) {}
};

// A document with zero lexicon hits cannot be placed in the semantic space.
class EmptySemanticColumn : public NumericalError {
public:
    explicit EmptySemanticColumn(int doc_id)
        : NumericalError("document " + std::to_string(doc_id) +
                         " has no semantic-field hits (zero column)"),
          doc_id_(doc_id) {}
    int doc_id() const noexcept { return doc_id_; }

private:
    int doc_id_;
};

class NoConvergence : public NumericalError {
public:
    NoConvergence(int sweeps, double off_diagonal)
        : NumericalError("jacobi svd did not converge after " + std::to_string(sweeps) +
                         " sweeps (worst relative off-diagonal " +
                         std::to_string(off_diagonal) + ")"),
          sweeps_(sweeps) {}
    int sweeps() const noexcept { return sweeps_; }

private:
    int sweeps_;
};

// A pipeline stage failure; keeps the underlying error's exit code.
class PipelineStageError : public Error {
public:
    PipelineStageError(const std::string& stage, const std::string& msg, int code)
        : Error("stage " + stage + ": " + msg), stage_(stage), code_(code) {}
    const std::string& stage() const noexcept { return stage_; }
    int exit_code() const noexcept override { return code_; }

private:
    std::string stage_;
    int code_;
};

}  // namespace semfields
