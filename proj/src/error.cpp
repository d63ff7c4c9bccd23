#include "spinent/error.hpp"

#include <exception>

namespace spinent {

void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const BracketError& e) {
    throw BracketError(context + ": " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(context + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(context + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(context + ": " + e.what());
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(context + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(context + ": " + e.what());
  } catch (const Error& e) {
    throw Error(context + ": " + e.what());
  }
}

}  // namespace spinent
