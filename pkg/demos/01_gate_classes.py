"""How conjugation by a Hermitian two-qubit Clifford moves Pauli supports.

Every Hermitian two-qubit Clifford falls into one of four classes.  The
class decides which Pauli fidelities can be learned individually and which
only as products of a pair.
"""

from collections import Counter

from spl_learn.clifford import classify_two_qubit, compose, hermitian_two_qubit_cliffords, standard_gate


def show(name, op):
    cls = classify_two_qubit(op)
    print(f"{name}: class {cls.class_id}, roles {cls.roles}")
    for label, image in cls.support_map.items():
        marker = "" if sum(c != "I" for c in label) == sum(c != "I" for c in image.lstrip("+-")) else "  (weight changes)"
        print(f"    {label} -> {image}{marker}")


if __name__ == "__main__":
    show("CZ", standard_gate("cz", [0, 1], 2))
    show("SWAP", standard_gate("swap", [0, 1], 2))
    show("H x H", compose(standard_gate("h", [0], 2), standard_gate("h", [1], 2)))

    # Census over the whole two-qubit Clifford group.
    hist = Counter(classify_two_qubit(op).class_id for op in hermitian_two_qubit_cliffords())
    print("\nHermitian two-qubit Cliffords per class:", dict(sorted(hist.items())))
