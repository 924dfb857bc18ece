"""Named algebras used throughout the tests and the CLI."""
from __future__ import annotations

from .algebra import Algebra, Arrow, Quiver, path_algebra, tensor_product
from .linalg import QQ, Field


def linear_quiver(n: int, degrees=None) -> Quiver:
    """``1 -> 2 -> ... -> n``."""
    degrees = degrees or [0] * (n - 1)
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1), degrees[i - 1]) for i in range(1, n))
    return Quiver(verts, arrows)


def B(n: int, field: Field = QQ) -> Algebra:
    """Path algebra of the linearly oriented ``A_n`` quiver."""
    return path_algebra(linear_quiver(n), field=field, name=f"B{n}")


def tensor_power(a: Algebra, n: int) -> Algebra:
    out = a
    for _ in range(n - 1):
        out = tensor_product(out, a)
    out.name = f"{a.name}^(x){n}"
    return out


def dual_numbers(w: int, field: Field = QQ) -> Algebra:
    """``k[e]/e^2`` with ``deg e = w``."""
    q = Quiver(("0",), (Arrow("e", "0", "0", w),))
    return path_algebra(q, [("e", "e")], field=field, name=f"dual({w})")


def graded_kronecker(degrees, field: Field = QQ) -> Algebra:
    """Two vertices with one arrow ``1 -> 2`` per entry of ``degrees``."""
    arrows = tuple(Arrow(f"a{i}", "1", "2", d) for i, d in enumerate(degrees))
    q = Quiver(("1", "2"), arrows)
    return path_algebra(q, field=field, name=f"kron{list(degrees)}")


def kronecker(n: int = 2, field: Field = QQ) -> Algebra:
    return graded_kronecker([0] * n, field)


def xyz(field: Field = QQ) -> Algebra:
    """Cyclic quiver ``0 -x-> 1 -y-> 2 -z-> 0`` with ``zy = xz = 0``."""
    q = Quiver(("0", "1", "2"), (Arrow("x", "0", "1"), Arrow("y", "1", "2"), Arrow("z", "2", "0")))
    return path_algebra(q, [("z", "y"), ("x", "z")], field=field, name="xyz",
                        blocks=[["0"], ["1"], ["2"]])


def dynkin_quivers() -> dict[str, Quiver]:
    """The twelve classifier fixtures with their expected verdicts as keys' values."""
    def star(legs):
        verts, arrows, k = ["c"], [], 0
        for li, L in enumerate(legs):
            prev = "c"
            for j in range(L):
                v = f"l{li}_{j}"
                verts.append(v)
                arrows.append(Arrow(f"a{k}", prev, v))
                k += 1
                prev = v
        return Quiver(tuple(verts), tuple(arrows))

    return {
        "A1": linear_quiver(1),
        "A2": linear_quiver(2),
        "A3": linear_quiver(3),
        "A4": Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "3", "2"),
                                            Arrow("c", "3", "4"))),
        "D4": star([1, 1, 1]),
        "D5": star([1, 1, 2]),
        "E6": star([1, 2, 2]),
        "E7": star([1, 2, 3]),
        "E8": star([1, 2, 4]),
        "Kronecker": Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2"))),
        "cycle": Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"),
                                          Arrow("c", "3", "1"))),
        "3-Kronecker": Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2"),
                                           Arrow("c", "1", "2"))),
    }


EXPECTED_DYNKIN = {
    "A1": "A(1)", "A2": "A(2)", "A3": "A(3)", "A4": "A(4)", "D4": "D(4)", "D5": "D(5)",
    "E6": "E6", "E7": "E7", "E8": "E8", "Kronecker": "NotTree", "cycle": "NotTree",
    "3-Kronecker": "NotTree",
}
