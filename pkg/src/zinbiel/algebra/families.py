"""Structure-constant tables of the classified families.

Every family shares one skeleton on the basis e_1..e_m, f_1..f_q:

* e_i∘e_j = C_{i+j-1}^j e_{i+j} for i + j ≤ m,
* e_i∘f_j = Σ_{k=0}^{i-1} C_{i+j-2-k}^{j-1} β_k f_{i+j},
* f_1∘e_j = β_j f_{j+1},
* f_i∘e_j = Σ_{k=0}^{j} C_{i+j-2-k}^{i-2} β_k f_{i+j}   (i ≥ 2),

mixed products for i + j ≤ q, with β_0 = 1 and
β_{k+1} = β_k (k + β_1)/(k + 1). Families differ in the block lengths, the
value of β_1 and a few extra f∘f products. The rule table below is the only
place those differences live.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..core.exceptions import ParameterError
from ..core.logging import get_logger
from ..models import FamilyId, FamilyParams
from .scalar import RATIONALS, Scalar, ScalarField, binomial
from .spectra import AlgebraType
from .structure import Algebra

logger = get_logger(__name__)


class Residual(NamedTuple):
    name: str
    value: Scalar


@dataclass
class _Instance:
    """Resolved parameters of one family member."""

    family: FamilyId
    n: int
    p: int
    t: Optional[int]
    space: ScalarField
    beta1: Scalar
    gamma1: Scalar
    delta1: Scalar
    delta_pm1: Scalar
    e_count: int
    f_count: int


Extra = Tuple[str, str, List[Tuple[str, Scalar]]]


@dataclass(frozen=True)
class FamilyRule:
    """Dimension, β_1 rule, β overrides and extra products of one family."""

    kind: AlgebraType
    dimension: Callable[[int, int], int]
    at_least: bool = False
    uses_t: bool = False
    beta1: Optional[Callable[[int], int]] = None
    beta1_choices: Optional[Callable[[int, int], Sequence[int]]] = None
    zero_betas: Callable[[int], Sequence[int]] = lambda p: ()
    extras: Callable[[_Instance], List[Extra]] = lambda inst: []
    symbolic: Tuple[str, ...] = ()


def _binomial_ff(inst: _Instance) -> List[Extra]:
    """f_i∘f_j = C_{i+j-1}^j f_{i+j} for i + j ≤ q."""
    out = []
    for i in range(1, inst.f_count):
        for j in range(1, inst.f_count - i + 1):
            out.append((f"f{i}", f"f{j}", [(f"f{i + j}", inst.space.convert(binomial(i + j - 1, j)))]))
    return out


def _gamma_delta_ff(inst: _Instance) -> List[Extra]:
    """f_i∘f_j = C (γ_1 e_{i+j} + δ_1 f_{i+j}) for i + j ≤ p, γ_1 C e_{p+1} at i + j = p + 1."""
    out = []
    p = inst.p
    for i in range(1, p + 1):
        for j in range(1, p + 2 - i):
            c = inst.space.convert(binomial(i + j - 1, j))
            if i + j <= p:
                out.append((f"f{i}", f"f{j}", [(f"e{i + j}", inst.gamma1 * c), (f"f{i + j}", inst.delta1 * c)]))
            else:
                out.append((f"f{i}", f"f{j}", [(f"e{p + 1}", inst.gamma1 * c)]))
    return out


def _single(left: str, right: str, *targets: Tuple[str, object]) -> Callable[[_Instance], List[Extra]]:
    def extras(inst: _Instance) -> List[Extra]:
        terms = []
        for label, coeff in targets:
            name = label.format(p=inst.p, pm1=inst.p - 1, pp1=inst.p + 1, pp2=inst.p + 2)
            value = inst.delta_pm1 if coeff == "delta_pm1" else inst.space.convert(coeff)
            terms.append((name, value))
        return [(left, right.format(p=inst.p, pm1=inst.p - 1, pp1=inst.p + 1), terms)]

    return extras


def _type_two_range(p: int, t: int) -> Sequence[int]:
    return range(-p, -(t - 1) + 1)


_FF_PM1 = _single("f1", "f{pm1}", ("f{p}", 1))

RULES: Dict[FamilyId, FamilyRule] = {
    FamilyId.A1: FamilyRule(AlgebraType.I, lambda p, t: 2 * p + 2, at_least=True, symbolic=("beta1",)),
    FamilyId.A2: FamilyRule(
        AlgebraType.I, lambda p, t: 2 * p + 2, at_least=True, beta1=lambda p: 2 - p, extras=_FF_PM1
    ),
    FamilyId.A3: FamilyRule(
        AlgebraType.I, lambda p, t: 2 * p + 2, at_least=True, beta1=lambda p: 1, extras=_binomial_ff
    ),
    FamilyId.A4: FamilyRule(
        AlgebraType.I,
        lambda p, t: 2 * p + 1,
        beta1=lambda p: 1 - p,
        extras=_single("f1", "f{p}", ("e{pp1}", 1)),
    ),
    FamilyId.A5: FamilyRule(AlgebraType.I, lambda p, t: 2 * p + 1, symbolic=("beta1",)),
    FamilyId.A6: FamilyRule(
        AlgebraType.I,
        lambda p, t: 2 * p + 1,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1,),
        extras=_FF_PM1,
    ),
    FamilyId.A7: FamilyRule(
        AlgebraType.I,
        lambda p, t: 2 * p + 1,
        beta1=lambda p: 1,
        extras=_gamma_delta_ff,
        symbolic=("gamma1", "delta1"),
    ),
    FamilyId.A8: FamilyRule(AlgebraType.I, lambda p, t: 2 * p, symbolic=("beta1",)),
    FamilyId.A9: FamilyRule(
        AlgebraType.I,
        lambda p, t: 2 * p,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1,),
        extras=_FF_PM1,
    ),
    FamilyId.A10: FamilyRule(
        AlgebraType.I,
        lambda p, t: 2 * p,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1,),
        extras=_single("f1", "f{pm1}", ("e{p}", 1), ("f{p}", "delta_pm1")),
        symbolic=("delta_pm1",),
    ),
    FamilyId.A11: FamilyRule(AlgebraType.I, lambda p, t: 2 * p, beta1=lambda p: 1),
    FamilyId.A12: FamilyRule(AlgebraType.I, lambda p, t: 2 * p, beta1=lambda p: 1, extras=_binomial_ff),
    FamilyId.T1: FamilyRule(AlgebraType.II, lambda p, t: 2 * p + 1, beta1_choices=lambda p, t: range(-p, 0)),
    FamilyId.T2: FamilyRule(
        AlgebraType.II,
        lambda p, t: 2 * p + 1,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1, p),
        extras=_single("f1", "f{pm1}", ("e{p}", 1)),
    ),
    FamilyId.T3: FamilyRule(
        AlgebraType.II,
        lambda p, t: 2 * p + 1,
        beta1=lambda p: 1 - p,
        zero_betas=lambda p: (p,),
        extras=_single("f1", "f{p}", ("f{pp1}", 1)),
    ),
    FamilyId.T4: FamilyRule(AlgebraType.II, lambda p, t: 2 * p + 1, beta1=lambda p: 1),
    FamilyId.T5: FamilyRule(AlgebraType.II, lambda p, t: 2 * p + 1, beta1=lambda p: 1, extras=_binomial_ff),
    FamilyId.T6: FamilyRule(AlgebraType.II, lambda p, t: 2 * p + 2, beta1_choices=lambda p, t: range(-p, 0)),
    FamilyId.T7: FamilyRule(
        AlgebraType.II,
        lambda p, t: 2 * p + 2,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1, p),
        extras=_single("f1", "f{pm1}", ("e{p}", 1)),
    ),
    FamilyId.T8: FamilyRule(
        AlgebraType.II,
        lambda p, t: 2 * p + 2,
        beta1=lambda p: -p,
        extras=_single("f1", "f{pp1}", ("f{pp2}", 1)),
    ),
    FamilyId.T9: FamilyRule(
        AlgebraType.II, lambda p, t: 2 * p + t, uses_t=True, beta1_choices=_type_two_range
    ),
    FamilyId.T10: FamilyRule(
        AlgebraType.II,
        lambda p, t: 2 * p + t,
        uses_t=True,
        beta1=lambda p: 2 - p,
        zero_betas=lambda p: (p - 1, p),
        extras=_single("f1", "f{pm1}", ("e{p}", 1)),
    ),
    FamilyId.W31: FamilyRule(AlgebraType.II, lambda p, t: 3 * p + 1, beta1=lambda p: -p),
}


def beta_sequence(
    p: int, beta1: Scalar, length: int, space: ScalarField = RATIONALS
) -> List[Scalar]:
    """The first ``length`` terms β_0, β_1, ... with β_0 = 1 and β_{k+1} = β_k (k + β_1)/(k + 1)."""
    if p < 1 or length < 1:
        raise ParameterError(f"beta_sequence needs p >= 1 and length >= 1, got p={p}, length={length}")
    beta1 = space.convert(beta1)
    betas = [space.one]
    for k in range(length - 1):
        betas.append(betas[-1] * (beta1 + k) / (k + 1))
    return betas


def closed_form_beta(top: int, count: int) -> List[Scalar]:
    """β_k = (−1)^k C_top^k for k = 0 .. count, the sequence of β_1 = −top."""
    return [RATIONALS.convert((-1) ** k * binomial(top, k)) for k in range(count + 1)]


def _scalar_param(name: str, value: Optional[object], space: ScalarField) -> Scalar:
    if value is None:
        return space.param(name)
    try:
        return space.convert(RATIONALS.convert(value))
    except Exception as e:
        raise ParameterError(f"{name}={value!r} is not a rational number", e) from e


def _integer(name: str, value: object) -> int:
    number = RATIONALS.convert(value) if not isinstance(value, int) else value
    if isinstance(number, int):
        return number
    if RATIONALS.domain.denom(number) != 1:
        raise ParameterError(f"{name}={value!r} must be an integer")
    return int(RATIONALS.domain.numer(number))


def _resolve(params: FamilyParams) -> _Instance:
    family = params.family
    rule = RULES[family]
    if params.p is None:
        raise ParameterError(f"{family.value} needs p")
    p = params.p
    if p < 3:
        raise ParameterError(f"{family.value} needs p >= 3, got {p}")
    t = params.t
    if rule.uses_t:
        if t is None or not 3 <= t <= p + 1:
            raise ParameterError(f"{family.value} needs 3 <= t <= p + 1, got t={t}")
    elif t is not None:
        raise ParameterError(f"{family.value} takes no t")
    expected = rule.dimension(p, t or 0)
    n = params.n if params.n is not None else expected
    if rule.at_least and n < expected:
        raise ParameterError(f"{family.value} needs n >= {expected}, got {n}")
    if not rule.at_least and n != expected:
        raise ParameterError(f"{family.value} needs n = {expected}, got {n}")

    for name in ("gamma1", "delta1", "delta_pm1"):
        if getattr(params, name) is not None and name not in rule.symbolic:
            raise ParameterError(f"{family.value} takes no {name}")
    symbolic = [
        name for name in rule.symbolic if getattr(params, name) is None
    ]
    space = ScalarField(symbolic)

    if rule.beta1 is not None:
        beta1 = space.convert(rule.beta1(p))
        if params.beta1 is not None and RATIONALS.convert(params.beta1) != rule.beta1(p):
            raise ParameterError(f"{family.value} fixes beta1 = {rule.beta1(p)}")
    elif rule.beta1_choices is not None:
        if params.beta1 is None:
            raise ParameterError(f"{family.value} needs an integer beta1")
        value = _integer("beta1", params.beta1)
        choices = rule.beta1_choices(p, t or 0)
        if value not in choices:
            raise ParameterError(
                f"{family.value} needs beta1 in {{{min(choices)}..{max(choices)}}}, got {value}"
            )
        beta1 = space.convert(value)
    else:
        beta1 = _scalar_param("beta1", params.beta1, space)

    zero = space.zero
    gamma1 = _scalar_param("gamma1", params.gamma1, space) if "gamma1" in rule.symbolic else zero
    delta1 = _scalar_param("delta1", params.delta1, space) if "delta1" in rule.symbolic else zero
    delta_pm1 = (
        _scalar_param("delta_pm1", params.delta_pm1, space) if "delta_pm1" in rule.symbolic else zero
    )
    if rule.kind is AlgebraType.I:
        e_count, f_count = n - p, p
    else:
        e_count, f_count = p, n - p
    return _Instance(family, n, p, t, space, beta1, gamma1, delta1, delta_pm1, e_count, f_count)


def _labels(e_count: int, f_count: int) -> List[str]:
    return [f"e{i}" for i in range(1, e_count + 1)] + [f"f{j}" for j in range(1, f_count + 1)]


def _skeleton(inst: _Instance, betas: Sequence[Scalar]) -> List[Tuple[str, str, str, Scalar]]:
    space, m, q = inst.space, inst.e_count, inst.f_count
    out = []
    for i in range(1, m + 1):
        for j in range(1, m - i + 1):
            out.append((f"e{i}", f"e{j}", f"e{i + j}", space.convert(binomial(i + j - 1, j))))
    for i in range(1, m + 1):
        for j in range(1, q - i + 1):
            coeff = sum(
                (binomial(i + j - 2 - k, j - 1) * betas[k] for k in range(i)), space.zero
            )
            out.append((f"e{i}", f"f{j}", f"f{i + j}", coeff))
    for i in range(1, q + 1):
        for j in range(1, min(m, q - i) + 1):
            if i == 1:
                coeff = betas[j]
            else:
                coeff = sum(
                    (binomial(i + j - 2 - k, i - 2) * betas[k] for k in range(j + 1)), space.zero
                )
            out.append((f"f{i}", f"e{j}", f"f{i + j}", coeff))
    return out


def _build(inst: _Instance) -> Algebra:
    rule = RULES[inst.family]
    betas = beta_sequence(inst.p, inst.beta1, max(inst.e_count, inst.f_count) + 1, inst.space)
    for k in rule.zero_betas(inst.p):
        betas[k] = inst.space.zero
    labels = _labels(inst.e_count, inst.f_count)
    index = {label: position for position, label in enumerate(labels)}
    products = [
        (index[left], index[right], index[target], coeff)
        for left, right, target, coeff in _skeleton(inst, betas)
    ]
    for left, right, terms in rule.extras(inst):
        for target, coeff in terms:
            if target not in index:
                raise ParameterError(f"{inst.family.value}: product target {target} does not exist")
            products.append((index[left], index[right], index[target], coeff))
    return Algebra.build(inst.space, labels, products)


def _fixture(params: FamilyParams) -> Algebra:
    if params.family is FamilyId.EX31:
        if params.n not in (None, 4):
            raise ParameterError("EX31 is 4-dimensional")
        return Algebra.build(
            RATIONALS,
            _labels(4, 0),
            [(0, 1, 2, 1), (0, 2, 3, 1), (1, 0, 2, -1)],
        )
    n = params.n
    if n is None:
        raise ParameterError("NF needs n")
    return Algebra.build(
        RATIONALS,
        _labels(n, 0),
        [(i - 1, j - 1, i + j - 1, binomial(i + j - 1, j)) for i in range(1, n) for j in range(1, n - i + 1)],
    )


def build_family(params: FamilyParams) -> Algebra:
    """Structure constants of the selected family member."""
    if params.family in (FamilyId.EX31, FamilyId.NF):
        return _fixture(params)
    inst = _resolve(params)
    algebra = _build(inst)
    logger.debug("build_family", family=params.describe(), dim=algebra.dim, params=list(algebra.params))
    return algebra


def build(
    family: Union[FamilyId, str], params: Optional[FamilyParams] = None, **fields: Any
) -> Algebra:
    """``build(FamilyId.A3, params)`` or the shorthand ``build("A3", n=8, p=3)``."""
    family = FamilyId(family)
    if params is None:
        params = FamilyParams(family=family, **fields)
    elif params.family is not family:
        raise ParameterError(f"Parameters for {params.family.value} passed to {family.value}")
    return build_family(params)


def family_kind(family: FamilyId) -> Optional[AlgebraType]:
    rule = RULES.get(family)
    return rule.kind if rule is not None else None


def printed_table_is_zinbiel(params: FamilyParams) -> bool:
    """Whether the table as printed satisfies the identity.

    With f₁∘f_{p−1} = e_p in a type-II table, e_p∘f_{p−1} = f_{2p−1} lies in
    range once n ≥ 3p − 1 and (f₁, f_{p−1}, f_{p−1}) becomes a defect.
    """
    if params.family in (FamilyId.T7, FamilyId.T10):
        inst = _resolve(params)
        return inst.n < 3 * inst.p - 1
    return True


def _coefficient(a: Algebra, left: str, right: str, target: str) -> Scalar:
    if left not in a.labels or right not in a.labels or target not in a.labels:
        return a.space.zero
    return a.product(a.index(left), a.index(right)).get(a.index(target), a.space.zero)


def restriction_residuals(family: Union[FamilyId, str], params: FamilyParams) -> List[Residual]:
    """Residuals of the structural restrictions a family member must satisfy; all vanish."""
    return residuals_of(build(family, params), FamilyId(family))


def residuals_of(a: Algebra, family: FamilyId) -> List[Residual]:
    """Restriction residuals read off an explicit table with the family's block layout."""
    rule = RULES.get(family)
    if rule is None:
        return []
    space = a.space
    m = sum(1 for label in a.labels if label.startswith("e"))
    q = a.dim - m
    n = a.dim
    p = q if rule.kind is AlgebraType.I else m

    def alpha(i: int) -> Scalar:
        return _coefficient(a, "f1", f"e{i}", f"e{i + 1}")

    def beta(i: int) -> Scalar:
        return space.one if i == 0 else _coefficient(a, "f1", f"e{i}", f"f{i + 1}")

    def gamma(i: int) -> Scalar:
        return _coefficient(a, "f1", f"f{i}", f"e{i + 1}")

    def delta(i: int) -> Scalar:
        return _coefficient(a, "f1", f"f{i}", f"f{i + 1}")

    b1 = beta(1)
    out: List[Residual] = []

    def chain(values: Callable[[int], Scalar], i: int, shift: bool) -> Scalar:
        total = 2 * values(1) + sum((values(k) for k in range(2, i + 1)), space.zero)
        lead = (i + b1) if shift else space.convert(i + 1)
        return lead * values(i) - b1 * total

    def product_beta(i: int) -> Scalar:
        value = space.one
        for k in range(i + 1):
            value = value * (b1 + k) / (k + 1)
        return value

    if rule.kind is AlgebraType.I:
        alpha_top, beta_top = n - p - 2, p - 2
        gamma_top, delta_top = min(n - p - 2, p - 1), min(n - p - 2, p - 2)
    else:
        alpha_top, beta_top = p - 2, p - 1
        gamma_top, delta_top = p - 2, n - p - 2
    for i in range(1, alpha_top + 1):
        out.append(Residual(f"alpha[{i + 1}]", alpha(i + 1)))
    for i in range(1, beta_top + 1):
        out.append(Residual(f"beta[{i + 1}] - product", beta(i + 1) - product_beta(i)))
    for i in range(1, gamma_top + 1):
        out.append(Residual(f"gamma sum[{i}]", chain(gamma, i, shift=False)))
    for i in range(1, delta_top + 1):
        out.append(Residual(f"delta sum[{i}]", chain(delta, i, shift=True)))

    wide = n >= 2 * p + 1
    if rule.kind is AlgebraType.I:
        for i in range(1, (p - 1 if wide else p - 2) + 1):
            out.append(Residual(f"gamma step[{i}]", (i + 1) * gamma(i) - (i + b1) * gamma(i + 1)))
        for i in range(1, p - 1):
            out.append(Residual(f"delta step[{i}]", (i + b1) * (delta(i) - delta(i + 1))))

    if not (b1 - 1):
        beta_range = p - 1 if rule.kind is AlgebraType.I else p
        if rule.kind is AlgebraType.I:
            gamma_range, delta_range = (p if wide else p - 1), p - 1
        else:
            gamma_range, delta_range = p - 1, n - p - 1
        out.extend(Residual(f"beta[{i}] - 1", beta(i) - 1) for i in range(1, beta_range + 1))
        out.extend(Residual(f"gamma[{i}] - gamma[1]", gamma(i) - gamma(1)) for i in range(1, gamma_range + 1))
        out.extend(Residual(f"delta[{i}] - delta[1]", delta(i) - delta(1)) for i in range(1, delta_range + 1))
    elif rule.kind is AlgebraType.I:
        out.extend(Residual(f"gamma[{i}]", gamma(i)) for i in range(1, (p - 1 if wide else p - 2) + 1))
        out.extend(Residual(f"delta[{i}]", delta(i)) for i in range(1, p - 1))
        if wide:
            out.append(Residual(f"(p-1+beta1) gamma[{p}]", (p - 1 + b1) * gamma(p)))
        else:
            out.append(Residual(f"(p-2+beta1) gamma[{p - 1}]", (p - 2 + b1) * gamma(p - 1)))
        out.append(Residual(f"(p-2+beta1) delta[{p - 1}]", (p - 2 + b1) * delta(p - 1)))
    else:
        out.extend(Residual(f"gamma[{i}]", gamma(i)) for i in range(1, p - 1))
        out.extend(Residual(f"delta[{i}]", delta(i)) for i in range(1, n - p - 1))
        out.append(Residual(f"(p-2+beta1) gamma[{p - 1}]", (p - 2 + b1) * gamma(p - 1)))
        out.append(
            Residual(f"(n-p-2+beta1) delta[{n - p - 1}]", (n - p - 2 + b1) * delta(n - p - 1))
        )

    if family is FamilyId.W31:
        for i in range(1, n - 2 * p):
            row = sum(
                (binomial(p + i - 1 - k, i - 1) * beta(k) for k in range(p + 1)), space.zero
            )
            out.append(Residual(f"beta row[{i}]", row))
    return out


def sample_instances(p: int) -> List[FamilyParams]:
    """Family members with β_1 drawn from {0, 1, −1, 2−p, 1−p} where β_1 is free."""
    specials = sorted({0, 1, -1, 2 - p, 1 - p})
    out: List[FamilyParams] = []
    for family, rule in RULES.items():
        if rule.uses_t:
            shapes = [(2 * p + t, t) for t in range(3, p + 2)]
        elif rule.at_least:
            shapes = [(2 * p + 2, None), (2 * p + 3, None)]
        else:
            shapes = [(rule.dimension(p, 0), None)]
        for n, t in shapes:
            base = dict(family=family, n=n, p=p, t=t)
            if rule.beta1_choices is not None:
                for b in specials:
                    if b in rule.beta1_choices(p, t or 0):
                        out.append(FamilyParams(**base, beta1=b))
            elif rule.beta1 is None:
                out.extend(FamilyParams(**base, beta1=b) for b in specials)
            elif family is FamilyId.A7:
                out.extend(
                    FamilyParams(**base, gamma1=g, delta1=d) for g in (0, 1) for d in (0, 1)
                )
            elif family is FamilyId.A10:
                out.extend(FamilyParams(**base, delta_pm1=d) for d in (0, 1))
            else:
                out.append(FamilyParams(**base))
    return out
