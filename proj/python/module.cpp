#include <pybind11/pybind11.h>

namespace py = pybind11;

PYBIND11_MODULE(_empcc, m) {
    m.doc() = "Explicit MPC compiler core (bindings grow with the library)";
}
