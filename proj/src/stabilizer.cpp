#include "nvphoton/stabilizer.hpp"

#include <algorithm>
#include <stdexcept>

#include "nvphoton/gates.hpp"

namespace nvphoton {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Index into {I, X, Y, Z}; the product of single-qubit Paulis up to phase is
// the XOR of their (x, z) bit pairs.
int bits_of(char c) {
  switch (c) {
    case 'X':
      return 0b10;
    case 'Y':
      return 0b11;
    case 'Z':
      return 0b01;
    default:
      return 0;
  }
}

char letter_of(int bits) {
  static constexpr char kLetters[4] = {'I', 'Z', 'X', 'Y'};
  return kLetters[bits & 3];
}

Matrix2 matrix_of(char c) {
  switch (c) {
    case 'X':
      return gates::pauli_x();
    case 'Y':
      return gates::pauli_y();
    case 'Z':
      return gates::pauli_z();
    default:
      return gates::identity();
  }
}

std::size_t photon_count(const StateVector& state) {
  return static_cast<std::size_t>(std::count_if(state.layout().begin(), state.layout().end(),
                                                [](const SubsystemLabel& l) { return l.kind == SubsystemKind::Photon; }));
}

}  // namespace

PauliString::PauliString(std::string_view letters) : letters_(letters) {
  if (!std::all_of(letters_.begin(), letters_.end(), valid_letter)) {
    throw std::invalid_argument("Pauli string letters must be I, X, Y or Z");
  }
}

PauliString PauliString::identity(std::size_t size) { return PauliString(std::string(size, 'I')); }

void PauliString::set(std::size_t i, char letter) {
  if (!valid_letter(letter)) {
    throw std::invalid_argument("Pauli string letters must be I, X, Y or Z");
  }
  letters_.at(i) = letter;
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("Pauli string size mismatch");
  }
  std::string out(size(), 'I');
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = letter_of(bits_of(letters_[i]) ^ bits_of(other.letters_[i]));
  }
  return PauliString(out);
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("Pauli string size mismatch");
  }
  int anti = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const char a = letters_[i];
    const char b = other.letters_[i];
    if (a != 'I' && b != 'I' && a != b) {
      ++anti;
    }
  }
  return anti % 2 == 0;
}

StateVector apply_pauli_string(const StateVector& state, const PauliString& pauli) {
  StateVector out = state;
  for (std::size_t i = 0; i < pauli.size(); ++i) {
    if (pauli.at(i) != 'I') {
      apply_gate_inplace(out, matrix_of(pauli.at(i)), SubsystemLabel::photon(static_cast<unsigned>(i + 1)));
    }
  }
  return out;
}

std::vector<double> stabilizer_expectations(const StateVector& state, const std::vector<PauliString>& generators) {
  const std::size_t photons = photon_count(state);
  std::vector<double> out;
  out.reserve(generators.size());
  for (const PauliString& g : generators) {
    if (g.size() != photons) {
      throw std::invalid_argument("Pauli string size " + std::to_string(g.size()) + " does not match " +
                                  std::to_string(photons) + " photons");
    }
    out.push_back(state.inner(apply_pauli_string(state, g)).real());
  }
  return out;
}

std::vector<PauliString> ghz_generators(std::size_t m) {
  std::vector<PauliString> gens;
  gens.emplace_back(std::string(m, 'X'));
  for (std::size_t a = 0; a + 1 < m; ++a) {
    PauliString zz = PauliString::identity(m);
    zz.set(a, 'Z');
    zz.set(a + 1, 'Z');
    gens.push_back(zz);
  }
  return gens;
}

std::vector<PauliString> cluster_generators(std::size_t m) {
  std::vector<PauliString> gens;
  for (std::size_t a = 0; a < m; ++a) {
    PauliString k = PauliString::identity(m);
    k.set(a, 'X');
    if (a > 0) {
      k.set(a - 1, 'Z');
    }
    if (a + 1 < m) {
      k.set(a + 1, 'Z');
    }
    gens.push_back(k);
  }
  return gens;
}

}  // namespace nvphoton
