"""The four parity/time-reversal extension cases as explicit
finite-dimensional (anti)unitary representations.

Conventions fixed here and echoed in every report:

* angular-momentum basis ordered m = j, j-1, ..., -j;
* doubled spaces ordered (r = + block, then r = - block);
* antiunitary operators stored as (unitary matrix M, conjugation K) with
  the antilinear composition law (M1 K)(M2 K) = M1 conj(M2), so squares
  like A_T**2 = eps_T are plain matrix statements;
* the free phase alpha(+) = 1, leaving alpha(-) = eps_T as the physical
  content of the doubling constraint alpha*(r) alpha(-r) = eps_T.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dynamics import GamowKet, Kind
from .errors import ValidationError
from .smatrix import SMatrixModel
from .waves import ObservableWave, StateWave, reflect

MAX_TWO_J = 8
TOL = 1e-12


def _check_two_j(j) -> int:
    two_j = 2 * Fraction(j)
    if two_j.denominator != 1 or two_j < 0 or two_j > MAX_TWO_J:
        raise ValidationError(
            f"j must be a half-integer with 0 <= 2j <= {MAX_TWO_J}, got {j}"
        )
    return int(two_j)


def parity_sign(j) -> int:
    """(-1)**(2j) for half-integer j."""
    return -1 if _check_two_j(j) % 2 else +1


@dataclass(frozen=True)
class SpinRep:
    """Standard angular-momentum matrices for spin j (basis m = j..-j)."""

    j: float
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray

    @property
    def dim(self) -> int:
        return self.J3.shape[0]


def spin_rep(j) -> SpinRep:
    two_j = _check_two_j(j)
    dim = two_j + 1
    m = np.array([(two_j - 2 * k) / 2.0 for k in range(dim)])
    J3 = np.diag(m).astype(complex)
    jv = two_j / 2.0
    Jp = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        mk = m[k]
        Jp[k - 1, k] = math.sqrt(jv * (jv + 1) - mk * (mk + 1))
    Jm = Jp.conj().T
    J1 = 0.5 * (Jp + Jm)
    J2 = -0.5j * (Jp - Jm)
    return SpinRep(j=float(jv), J1=J1, J2=J2, J3=J3)


def c_matrix(j) -> np.ndarray:
    """The spin-flip matrix C with entries (-1)**(j-mu) delta_{mu,-nu}.

    Rows and columns ordered m = j..-j.  C*C = (-1)**(2j) * identity.
    """
    two_j = _check_two_j(j)
    dim = two_j + 1
    C = np.zeros((dim, dim))
    # mu = j - row, nu = j - col; mu = -nu picks col = dim-1-row and the
    # sign (-1)**(j - mu) is (-1)**row
    for row in range(dim):
        C[row, dim - 1 - row] = (-1.0) ** row
    return C


@dataclass(frozen=True)
class AntiunitaryOperator:
    """Antilinear operator M K: v -> M conj(v), with M unitary."""

    matrix: np.ndarray
    antilinear: bool = True

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", M)
        if not self.antilinear:
            raise ValidationError("time-reversal operators are antilinear")
        dev = np.max(np.abs(M @ M.conj().T - np.eye(M.shape[0])))
        if dev > TOL:
            raise ValidationError(f"matrix is not unitary (deviation {dev:.2e})")

    def apply(self, v) -> np.ndarray:
        return self.matrix @ np.conj(v)

    def compose(self, other: "AntiunitaryOperator") -> np.ndarray:
        """(M1 K)(M2 K) = M1 conj(M2), a LINEAR operator."""
        return self.matrix @ np.conj(other.matrix)

    def squared(self) -> np.ndarray:
        return self.compose(self)

    def conjugate_linear(self, A) -> np.ndarray:
        """A_T A A_T^{-1} for a linear operator A: M conj(A) M^H."""
        return self.matrix @ np.conj(A) @ self.matrix.conj().T


def _scalar_of(Mat, what: str) -> int:
    dim = Mat.shape[0]
    lam = Mat[0, 0]
    dev = np.max(np.abs(Mat - lam * np.eye(dim)))
    if dev > TOL or min(abs(lam - 1), abs(lam + 1)) > TOL:
        raise ValidationError(f"{what} is not +/-1 times the identity")
    return 1 if abs(lam - 1) <= TOL else -1


@dataclass(frozen=True)
class ExtensionCase:
    """One row of the extension table at fixed spin."""

    row: int
    j: float
    eps_T: int
    eps_I: int
    U_P: np.ndarray
    A_T: AntiunitaryOperator
    doubled: bool


def build_extension(row: int, j) -> ExtensionCase:
    """Construct the representation of extension case ``row`` for spin j.

    Row 1 is the conventional undoubled case (A_T = C); rows 2-4 act on
    the doubled space with A_T off-diagonal in the r label:

        row   eps_T        eps_I        U_P blocks    A_T blocks
        1     (-1)^2j      (-1)^2j      1             C
        2     -(-1)^2j     (-1)^2j      (1, -1)       (0, C / -C, 0)
        3     (-1)^2j      -(-1)^2j     (1, -1)       (0, C /  C, 0)
        4     -(-1)^2j     -(-1)^2j     (1,  1)       (0, C / -C, 0)
    """
    if row not in (1, 2, 3, 4):
        raise ValidationError(f"extension row must be 1..4, got {row}")
    s = parity_sign(j)
    C = c_matrix(j)
    dim = C.shape[0]
    eye = np.eye(dim)
    zero = np.zeros((dim, dim))
    if row == 1:
        U_P = eye.astype(complex)
        M = C.astype(complex)
        eps_T, eps_I = s, s
        doubled = False
    else:
        if row == 2:
            U_P = np.block([[eye, zero], [zero, -eye]]).astype(complex)
            M = np.block([[zero, C], [-C, zero]]).astype(complex)
            eps_T, eps_I = -s, s
        elif row == 3:
            U_P = np.block([[eye, zero], [zero, -eye]]).astype(complex)
            M = np.block([[zero, C], [C, zero]]).astype(complex)
            eps_T, eps_I = s, -s
        else:
            U_P = np.block([[eye, zero], [zero, eye]]).astype(complex)
            M = np.block([[zero, C], [-C, zero]]).astype(complex)
            eps_T, eps_I = -s, -s
        doubled = True
    case = ExtensionCase(row=row, j=float(Fraction(j)), eps_T=eps_T, eps_I=eps_I,
                         U_P=U_P, A_T=AntiunitaryOperator(M), doubled=doubled)
    # the table values ARE the squares; fail construction if they ever drift
    assert _scalar_of(case.A_T.squared(), "A_T^2") == eps_T
    assert _scalar_of(
        AntiunitaryOperator(U_P @ M).squared(), "(U_P A_T)^2") == eps_I
    return case


def doubled_observable(case: ExtensionCase, B) -> np.ndarray:
    """Block-diagonal copy of an observable on the doubled space."""
    B = np.asarray(B, dtype=complex)
    if not case.doubled:
        return B
    zero = np.zeros_like(B)
    return np.block([[B, zero], [zero, B]])


@dataclass(frozen=True)
class RelationReport:
    """Per-relation max deviations for one (row, j) case."""

    row: int
    j: float
    eps_T: int
    eps_I: int
    deviations: dict[str, float]
    passed: bool

    def as_dict(self) -> dict:
        return {
            "row": self.row,
            "j": self.j,
            "eps_T": self.eps_T,
            "eps_I": self.eps_I,
            "deviations": dict(self.deviations),
            "passed": bool(self.passed),
            "basis": "m = j..-j; doubled order (r=+, r=-)",
        }


def check_relations(case: ExtensionCase, rep: SpinRep) -> RelationReport:
    """Verify the defining relations of the extension on a spin rep.

    Checks U_P^2 = 1, A_T^2 = eps_T, (U_P A_T)^2 = eps_I,
    A_T J_i A_T^{-1} = -J_i, and A_T U_P A_T^{-1} = eps_T eps_I U_P,
    with observables doubled block-diagonally where needed.
    """
    if rep.dim != (case.U_P.shape[0] if not case.doubled
                   else case.U_P.shape[0] // 2):
        raise ValidationError(
            f"spin rep dimension {rep.dim} does not match case for j={case.j}"
        )
    dim = case.U_P.shape[0]
    eye = np.eye(dim)
    dev = {}
    dev["U_P^2 = 1"] = float(np.max(np.abs(case.U_P @ case.U_P - eye)))
    dev["A_T^2 = eps_T"] = float(
        np.max(np.abs(case.A_T.squared() - case.eps_T * eye)))
    upat = AntiunitaryOperator(case.U_P @ case.A_T.matrix)
    dev["(U_P A_T)^2 = eps_I"] = float(
        np.max(np.abs(upat.squared() - case.eps_I * eye)))
    for name, J in (("J1", rep.J1), ("J2", rep.J2), ("J3", rep.J3)):
        Jd = doubled_observable(case, J)
        dev[f"A_T {name} A_T^-1 = -{name}"] = float(
            np.max(np.abs(case.A_T.conjugate_linear(Jd) + Jd)))
    dev["A_T U_P A_T^-1 = eps_T eps_I U_P"] = float(
        np.max(np.abs(case.A_T.conjugate_linear(case.U_P)
                      - case.eps_T * case.eps_I * case.U_P)))
    passed = all(v <= TOL for v in dev.values())
    return RelationReport(row=case.row, j=case.j, eps_T=case.eps_T,
                          eps_I=case.eps_I, deviations=dev, passed=passed)


@dataclass(frozen=True)
class TaggedWave:
    """A wave with its space tag implied by type, plus the r label.

    r is None for the undoubled row-1 case and +/-1 for rows 2-4.
    """

    wave: StateWave | ObservableWave
    r: int | None = None

    def __post_init__(self):
        if self.r not in (None, +1, -1):
            raise ValidationError("r must be None, +1 or -1")
        if not isinstance(self.wave, (StateWave, ObservableWave)):
            raise ValidationError("wave must be a StateWave or ObservableWave")

    @property
    def space(self) -> str:
        """Hardy-space tag: states sit in Phi_-, observables in Phi_+."""
        return "Phi-" if isinstance(self.wave, StateWave) else "Phi+"


def transform_ket(case: ExtensionCase, tagged: TaggedWave) -> TaggedWave:
    """Action of A_T on a tagged wave.

    Swaps state <-> observable through Schwarz reflection, multiplies by
    alpha(r) (alpha(+) = 1, alpha(-) = eps_T), and flips r in the doubled
    rows; row 1 carries no r label and flips only the space tag.
    """
    if case.doubled:
        if tagged.r is None:
            raise ValidationError("rows 2-4 need an r label on the wave")
    else:
        if tagged.r is not None:
            raise ValidationError("row 1 carries no r label (no r-flip exists)")
    alpha = 1.0 if (tagged.r is None or tagged.r == +1) else float(case.eps_T)
    reflected = tagged.wave.f.conjugate_reflection() * alpha
    if isinstance(tagged.wave, StateWave):
        new_wave: StateWave | ObservableWave = ObservableWave(reflected)
    else:
        new_wave = StateWave(reflected)
    new_r = None if tagged.r is None else -tagged.r
    return TaggedWave(wave=new_wave, r=new_r)


def transform_gamow(case: ExtensionCase, ket: GamowKet) -> GamowKet:
    """Action of A_T on a Gamow tag: decaying (z_R) <-> growing (conj z_R),
    with the r label flipped in the doubled rows."""
    new_kind = Kind.GROWING if ket.kind is Kind.DECAYING else Kind.DECAYING
    new_r = -ket.r_tag if case.doubled else ket.r_tag
    return GamowKet(pole=ket.pole, k=ket.k, kind=new_kind, r_tag=new_r)


@dataclass(frozen=True)
class ReciprocityReport:
    """Two-route comparison of the pairing density at one energy."""

    energy: float
    deviation_by_r: dict[int, float]
    off_diagonal_leak: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "energy": self.energy,
            "deviation_r_plus": self.deviation_by_r[+1],
            "deviation_r_minus": self.deviation_by_r[-1],
            "off_diagonal_leak": self.off_diagonal_leak,
            "passed": bool(self.passed),
        }


def reciprocity_check(m: SMatrixModel, E: float,
                      o: ObservableWave | None = None,
                      s: StateWave | None = None,
                      tol: float = 1e-10) -> ReciprocityReport:
    """Check |E, r+> = |E, r-> S(E) at the pairing level, per r sector.

    Route one evaluates the in-branch density K(E) S(E) f(E) with S from
    rational algebra; route two replaces S(E) by e^{2i delta(E)} from the
    unwrapped phase shift.  The r = +/- sectors run through the block
    doubling of the dynamics and must agree with zero off-diagonal leak.
    """
    if not (E > 0.0 and math.isfinite(E)):
        raise ValidationError(f"reciprocity check needs real E > 0, got {E}")
    if o is None or s is None:
        from .corpus import default_wave_pair
        o_default, s_default = default_wave_pair()
        o = o or o_default
        s = s or s_default
    w = math.sqrt(E)
    s_val = m.s_value(w)  # raises PoleProximityError near a pole
    base = complex(reflect(o).evaluate(w)) * complex(s.f.evaluate(w))
    s_block = np.diag([s_val, s_val])  # r-diagonal dynamics, per the doubling
    delta = m.phase_shift(E)
    out_route = cmath.exp(2j * delta) * base
    deviations = {}
    basis = {+1: np.array([1.0, 0.0]), -1: np.array([0.0, 1.0])}
    leak = 0.0
    for r in (+1, -1):
        e_r = basis[r]
        in_route = (e_r @ s_block @ e_r) * base
        scale = max(abs(in_route), 1e-300)
        deviations[r] = abs(in_route - out_route) / scale
        leak = max(leak, abs(basis[-r] @ s_block @ e_r))
    passed = all(v <= tol for v in deviations.values()) and leak == 0.0
    return ReciprocityReport(energy=float(E), deviation_by_r=deviations,
                             off_diagonal_leak=leak, passed=passed)
