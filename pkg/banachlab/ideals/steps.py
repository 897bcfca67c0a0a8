"""
验证流水线步骤实现

每个步骤读取目录中的空间，计算数值指数证书并把不等式报告追加到上下文。
左端是若干见证证书中的最小值（v(T)/‖T‖ 总是 n(Z) 的上界），右端是因子空间的数值指数。
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Iterable

import numpy as np
from rich.console import Console

from ..exceptions import BanachLabError, GuardrailExceededError
from ..geometry.norms import ball_vertices, dual_space, is_polyhedral, norming_functionals
from ..models import (
    IndexCertificate,
    InequalityReport,
    NormedSpace,
    NormResult,
    Operator,
    SuiteContext,
    SuiteStep,
    Verdict,
)
from ..numerical import direct_radius, identity_plus, numerical_index, witness_certificate
from ..numerical.range import pair_data
from ..operators import identity, op_norm, operator_space, rank_one
from ..tensor import tensor_lift, tensor_space
from ..utils import make_rng, random_vectors
from .embeddings import embed_postcompose, embed_precompose

console = Console(stderr=True)

DEFAULT_TOLERANCE = 1e-4
DEFAULT_TRANSPORT_SAMPLES = 3

# 参与逆否检验的报告前缀
IDEAL_PREFIXES = ("operator-ideal", "tensor-pi", "tensor-eps")


# ---------------------------------------------------------------------------
# 判定与报告
# ---------------------------------------------------------------------------


def judge(
    lhs: Any,
    lhs_exact: bool,
    rhs: Any,
    rhs_exact: bool,
    relation: str,
    tolerance: float,
    exact_tol: float,
) -> tuple[float, Verdict]:
    """
    计算 margin 并给出结论

    relation 为 '<='、'<' 或 '='；'=' 的 margin 为 −|rhs − lhs|。

    Returns:
        (margin, verdict)
    """
    difference = rhs - lhs
    margin = float(-abs(difference) if relation == "=" else difference)
    if lhs_exact and rhs_exact:
        ok = margin > exact_tol if relation == "<" else margin >= -exact_tol
        return margin, Verdict.HOLDS if ok else Verdict.VIOLATED
    ok = margin > 0 if relation == "<" else margin >= -tolerance
    return margin, Verdict.HOLDS_WITHIN_TOLERANCE if ok else Verdict.INCONCLUSIVE_HEURISTIC


def make_report(
    context: SuiteContext,
    name: str,
    statement: str,
    lhs: Any,
    lhs_exact: bool,
    rhs: Any,
    rhs_exact: bool,
    relation: str = "<=",
    witnesses: Iterable[str] = (),
    note: str = "",
) -> InequalityReport:
    margin, verdict = judge(
        lhs, lhs_exact, rhs, rhs_exact, relation, tolerance(context), context.options.exact_tol
    )
    return InequalityReport(
        name=name,
        statement=statement,
        relation=relation,
        lhs=float(lhs),
        lhs_exact=lhs_exact,
        rhs=float(rhs),
        rhs_exact=rhs_exact,
        margin=margin,
        witnesses=list(witnesses),
        verdict=verdict,
        note=note,
    )


def inconclusive(name: str, statement: str, note: str) -> InequalityReport:
    """超出保护阈值等无法计算的情形"""
    return InequalityReport(
        name=name, statement=statement, verdict=Verdict.INCONCLUSIVE_HEURISTIC, note=note
    )


def tolerance(context: SuiteContext) -> float:
    return float(context.config.get("tolerance", DEFAULT_TOLERANCE))


def announce(report: InequalityReport) -> None:
    """按结论着色输出一条报告"""
    style = {
        Verdict.HOLDS: "green",
        Verdict.HOLDS_WITHIN_TOLERANCE: "green",
        Verdict.VIOLATED: "red",
        Verdict.INCONCLUSIVE_HEURISTIC: "yellow",
    }[report.verdict]
    mark = {"green": "✓", "red": "✗", "yellow": "⚠"}[style]
    if report.lhs is None:
        console.print(f"[{style}]{mark} {report.name}: {report.note}[/{style}]")
        return
    console.print(
        f"[{style}]{mark} {report.name}: {report.lhs:.6g} {report.relation} {report.rhs:.6g} "
        f"({report.verdict.value})[/{style}]"
    )


# ---------------------------------------------------------------------------
# 数值指数缓存与见证
# ---------------------------------------------------------------------------


def index_of(space: NormedSpace, context: SuiteContext) -> IndexCertificate:
    """按签名缓存的数值指数（精确或估计）"""
    key = space.signature
    if key not in context.index_cache:
        context.index_cache[key] = numerical_index(space, context.config.get("budget"), context.options)
    return context.index_cache[key]


def _lift_norm(S: Operator, context: SuiteContext) -> NormResult:
    """等距提升：‖Φ_J‖ = ‖J‖，‖Ψ_S‖ = ‖S‖，‖S⊗Id‖ = ‖S‖"""
    norm = op_norm(S, context.options)
    return NormResult(value=norm.value, exact=norm.exact, method="isometric-lift")


def _certify(
    Z: NormedSpace, T: Operator, context: SuiteContext, provenance: str, norm: NormResult | None = None
) -> IndexCertificate | None:
    try:
        return witness_certificate(Z, T, context.options, provenance, norm=norm)
    except (ValueError, BanachLabError) as e:
        console.print(f"[dim]跳过见证 {provenance}: {e}[/dim]")
        return None


def _estimate(Z: NormedSpace, context: SuiteContext) -> IndexCertificate | None:
    """小维数实多面体空间上额外做一次多起点估计"""
    if not context.config.get("estimate_ideals", True):
        return None
    if not is_polyhedral(Z) or Z.dim * Z.dim > context.options.estimate_dim:
        return None
    try:
        return index_of(Z, context)
    except BanachLabError as e:
        console.print(f"[dim]{Z.label}: 估计失败 {e}[/dim]")
        return None


def _upper_bound(certificates: list[IndexCertificate | None]) -> tuple[Any, bool, list[str]] | None:
    """见证证书中的最小值；exact 表示该值由精确路径算出"""
    valid = [c for c in certificates if c is not None]
    if not valid:
        return None
    best = min(valid, key=lambda c: float(c.value))
    return best.value, bool(best.exact or best.certified), [c.provenance for c in valid]


def _min_index(spaces: Iterable[NormedSpace], context: SuiteContext) -> tuple[Any, bool]:
    certificates = [index_of(space, context) for space in spaces]
    best = min(certificates, key=lambda c: float(c.value))
    return best.value, all(c.exact for c in certificates)


def _ordered_pairs(catalog: list[NormedSpace]) -> list[tuple[NormedSpace, NormedSpace]]:
    """同一标量域的有序对（含 X = Y）"""
    return [(X, Y) for X, Y in itertools.product(catalog, repeat=2) if X.field == Y.field]


def _tensor_report(
    name: str,
    statement: str,
    left: NormedSpace,
    right: NormedSpace,
    kind: str,
    context: SuiteContext,
) -> InequalityReport:
    """n(left ⊗ right) 与 min{n(left), n(right)} 比较"""
    try:
        Z = tensor_space(left, right, kind, context.options)
    except GuardrailExceededError as e:
        return inconclusive(name, statement, str(e))

    S = index_of(left, context).witness_operator
    R = index_of(right, context).witness_operator
    left_lift = tensor_lift(S, identity(right), kind, context.options)
    right_lift = tensor_lift(identity(left), R, kind, context.options)
    certificates = [
        _certify(Z, left_lift, context, f"{S.label or 'S'}⊗Id", _lift_norm(S, context)),
        _certify(Z, right_lift, context, f"Id⊗{R.label or 'S'}", _lift_norm(R, context)),
        _estimate(Z, context),
    ]
    bound = _upper_bound(certificates)
    if bound is None:
        return inconclusive(name, statement, "没有可用的见证算子")
    lhs, lhs_exact, witnesses = bound
    rhs, rhs_exact = _min_index((left, right), context)
    return make_report(context, name, statement, lhs, lhs_exact, rhs, rhs_exact, witnesses=witnesses)


# ---------------------------------------------------------------------------
# 步骤
# ---------------------------------------------------------------------------


class FactorIndexStep(SuiteStep):
    """
    因子空间的数值指数

    计算目录中每个空间 X 及其对偶 X* 的数值指数，并检验 n(X*) = n(X)。
    """

    @property
    def name(self) -> str:
        return "factor_index"

    @property
    def description(self) -> str:
        return "计算目录空间及其对偶的数值指数"

    def execute(self, context: SuiteContext) -> SuiteContext:
        for X in context.catalog:
            certificate = index_of(X, context)
            flag = "精确" if certificate.exact else certificate.method.value
            console.print(f"[green]✓ n({X.label}) = {float(certificate.value):.6g} ({flag})[/green]")
            dual = index_of(dual_space(X), context)
            report = make_report(
                context,
                f"dual-index:{X.label}",
                f"n({X.label}*) = n({X.label})",
                dual.value,
                dual.exact,
                certificate.value,
                certificate.exact,
                relation="=",
                witnesses=[dual.provenance, certificate.provenance],
            )
            context.reports.append(report)
            announce(report)
        return context


class OperatorIdealStep(SuiteStep):
    """n(L(X,Y)) ≤ min{n(X), n(Y)}，见证为 Φ_J 与 Ψ_S"""

    @property
    def name(self) -> str:
        return "operator_ideal"

    @property
    def description(self) -> str:
        return "算子空间 L(X,Y) 的数值指数上界"

    def execute(self, context: SuiteContext) -> SuiteContext:
        for X, Y in _ordered_pairs(context.catalog):
            name = f"operator-ideal:{X.label}|{Y.label}"
            statement = f"n(L({X.label},{Y.label})) ≤ min{{n({X.label}), n({Y.label})}}"
            try:
                Z = operator_space(X, Y, context.options)
            except GuardrailExceededError as e:
                report = inconclusive(name, statement, str(e))
            else:
                J = index_of(X, context).witness_operator
                S = index_of(Y, context).witness_operator
                certificates = [
                    _certify(Z, embed_precompose(J, Y, context.options), context,
                             f"Φ[{J.label or 'J'}]", _lift_norm(J, context)),
                    _certify(Z, embed_postcompose(S, X, context.options), context,
                             f"Ψ[{S.label or 'S'}]", _lift_norm(S, context)),
                    _estimate(Z, context),
                ]
                bound = _upper_bound(certificates)
                if bound is None:
                    report = inconclusive(name, statement, "没有可用的见证算子")
                else:
                    lhs, lhs_exact, witnesses = bound
                    rhs, rhs_exact = _min_index((X, Y), context)
                    report = make_report(
                        context, name, statement, lhs, lhs_exact, rhs, rhs_exact, witnesses=witnesses
                    )
            context.reports.append(report)
            announce(report)
        return context


class TensorIdealStep(SuiteStep):
    """n(X⊗Y) ≤ min{n(X), n(Y)}，π 或 ε，见证为 S⊗Id 与 Id⊗S"""

    def __init__(self, kind: str = "pi"):
        self.kind = kind

    @property
    def symbol(self) -> str:
        return "π" if self.kind == "pi" else "ε"

    @property
    def name(self) -> str:
        return f"tensor_{self.kind}"

    @property
    def description(self) -> str:
        return f"{'射影' if self.kind == 'pi' else '内射'}张量积 X⊗{self.symbol}Y 的数值指数上界"

    def execute(self, context: SuiteContext) -> SuiteContext:
        for X, Y in _ordered_pairs(context.catalog):
            report = _tensor_report(
                f"tensor-{self.kind}:{X.label}|{Y.label}",
                f"n({X.label}⊗{self.symbol}{Y.label}) ≤ min{{n({X.label}), n({Y.label})}}",
                X,
                Y,
                self.kind,
                context,
            )
            context.reports.append(report)
            announce(report)
        return context


class DualTensorStep(SuiteStep):
    """n((X⊗πY)*) ≤ min{n(X*), n(Y*)}，其中 (X⊗πY)* = X*⊗εY*"""

    @property
    def name(self) -> str:
        return "dual_tensor"

    @property
    def description(self) -> str:
        return "射影张量积的对偶 (X⊗πY)* = X*⊗εY*"

    def execute(self, context: SuiteContext) -> SuiteContext:
        for X, Y in _ordered_pairs(context.catalog):
            report = _tensor_report(
                f"dual-tensor:{X.label}|{Y.label}",
                f"n(({X.label}⊗π{Y.label})*) ≤ min{{n({X.label}*), n({Y.label}*)}}",
                dual_space(X),
                dual_space(Y),
                "eps",
                context,
            )
            context.reports.append(report)
            announce(report)
        return context


class IdealCorollaryStep(SuiteStep):
    """
    算子理想的推论

    可逼近/紧算子理想 X*⊗εY 与核算子理想 X*⊗πY 的数值指数不超过 min{n(X*), n(Y)}。
    """

    @property
    def name(self) -> str:
        return "ideal_corollary"

    @property
    def description(self) -> str:
        return "紧算子与核算子理想 X*⊗Y"

    def execute(self, context: SuiteContext) -> SuiteContext:
        for X, Y in _ordered_pairs(context.catalog):
            for kind, title in (("eps", "compact"), ("pi", "nuclear")):
                symbol = "π" if kind == "pi" else "ε"
                report = _tensor_report(
                    f"{title}-ideal:{X.label}|{Y.label}",
                    f"n({X.label}*⊗{symbol}{Y.label}) ≤ min{{n({X.label}*), n({Y.label})}}",
                    dual_space(X),
                    Y,
                    kind,
                    context,
                )
                context.reports.append(report)
                announce(report)
        return context


class TransportStep(SuiteStep):
    """
    见证迁移

    随机算子 J、S 上检验 v(Φ_J) ≤ v(J)、v(Ψ_S) ≤ v(S)、v(S⊗Id) ≤ v(S)，
    并对秩一 Daugavet 算子检验 ‖Id + S⊗πId‖ = ‖Id + S‖ = 1 + ‖S‖。
    张量部分只在张量空间为多面体时计算。
    """

    @property
    def name(self) -> str:
        return "transport"

    @property
    def description(self) -> str:
        return "数值半径沿嵌入与张量提升的迁移"

    def _random_operator(self, X: NormedSpace, rng: np.random.Generator, label: str) -> Operator:
        flat = random_vectors(X.dim * X.dim, 1, not X.is_real, rng)[0]
        return Operator(matrix=flat.reshape(X.dim, X.dim), domain=X, codomain=X, label=label)

    def _worst(
        self,
        context: SuiteContext,
        name: str,
        statement: str,
        pairs: list[tuple[Operator, Operator]],
    ) -> InequalityReport:
        """对若干 (提升算子, 原算子) 取 margin 最小的一组"""
        worst = None
        for lifted, original in pairs:
            big = direct_radius(lifted, context.options)
            small = direct_radius(original, context.options)
            report = make_report(
                context, name, statement, big.value, big.exact, small.value, small.exact,
                witnesses=[f"{lifted.domain.label}: {big.method}", f"{original.domain.label}: {small.method}"],
            )
            if worst is None or report.margin < worst.margin:
                worst = report
        return worst

    def _daugavet_transport(self, X: NormedSpace, Y: NormedSpace, context: SuiteContext) -> list[InequalityReport]:
        """秩一 Daugavet 算子 S：‖Id + S⊗πId‖ 与 ‖Id + S‖ 各自对照 1 + ‖S‖"""
        tag = f"{X.label}|{Y.label}"
        name = f"daugavet-transport:{tag}"
        statement = "‖Id + S⊗πId‖ = 1 + ‖S‖（S 为秩一 Daugavet 算子）"
        try:
            Z = tensor_space(X, Y, "pi", context.options)
        except GuardrailExceededError as e:
            return [inconclusive(name, statement, str(e))]
        if not is_polyhedral(X) or pair_data(Z, context.options) is None:
            return []
        x = np.array(ball_vertices(X, context.options)[0], dtype=object)
        f = norming_functionals(X, x, options=context.options)[0].coefficients
        S = rank_one(f, x, X, X, label="f⊗x")
        lifted = identity_plus(tensor_lift(S, identity(Y), "pi", context.options))
        big = op_norm(lifted, context.options)
        middle = op_norm(identity_plus(S), context.options)
        norm_S = op_norm(S, context.options)
        target = 1 + norm_S.value
        return [
            make_report(
                context, name, statement, big.value, big.exact, target, norm_S.exact,
                relation="=", witnesses=[big.method, norm_S.method],
                note=f"‖Id + S‖ = {float(middle.value):.6g}",
            ),
            make_report(
                context, f"daugavet-equation:{tag}", "‖Id + S‖ = 1 + ‖S‖", middle.value, middle.exact,
                target, norm_S.exact, relation="=", witnesses=[middle.method, norm_S.method],
            ),
        ]

    def execute(self, context: SuiteContext) -> SuiteContext:
        rng = make_rng(context.options.seed)
        samples = int(context.config.get("transport_samples", DEFAULT_TRANSPORT_SAMPLES))
        for X, Y in _ordered_pairs(context.catalog):
            tag = f"{X.label}|{Y.label}"
            reports: list[InequalityReport | None] = []
            Js = [self._random_operator(X, rng, f"J{k}") for k in range(samples)]
            Ss = [self._random_operator(Y, rng, f"S{k}") for k in range(samples)]
            try:
                reports.append(self._worst(
                    context, f"transport-pre:{tag}", "v(Φ_J) ≤ v(J)",
                    [(embed_precompose(J, Y, context.options), J) for J in Js],
                ))
                reports.append(self._worst(
                    context, f"transport-post:{tag}", "v(Ψ_S) ≤ v(S)",
                    [(embed_postcompose(S, X, context.options), S) for S in Ss],
                ))
            except GuardrailExceededError as e:
                reports.append(inconclusive(f"transport-embed:{tag}", "v(Φ_J) ≤ v(J)", str(e)))
            for kind in ("pi", "eps"):
                symbol = "π" if kind == "pi" else "ε"
                try:
                    Z = tensor_space(X, Y, kind, context.options)
                except GuardrailExceededError as e:
                    reports.append(inconclusive(f"transport-{kind}:{tag}", f"v(S⊗{symbol}Id) ≤ v(S)", str(e)))
                    continue
                if pair_data(Z, context.options) is None:
                    continue
                reports.append(self._worst(
                    context, f"transport-{kind}:{tag}", f"v(S⊗{symbol}Id) ≤ v(S)",
                    [(tensor_lift(J, identity(Y), kind, context.options), J) for J in Js],
                ))
            reports.extend(self._daugavet_transport(X, Y, context))
            for report in reports:
                if report is not None:
                    context.reports.append(report)
                    announce(report)
        return context


class ContrapositiveStep(SuiteStep):
    """
    逆否读法

    "n(Z) = 1 ⇒ n(X) = n(Y) = 1" 等价于 min{n(X), n(Y)} < 1 ⇒ n(Z) < 1；
    对前提成立的报告检验 n(Z) 的上界严格小于 1。
    """

    @property
    def name(self) -> str:
        return "contrapositive"

    @property
    def description(self) -> str:
        return "数值指数为 1 的逆否检验"

    def execute(self, context: SuiteContext) -> SuiteContext:
        one = Fraction(1)
        premise_tol = tolerance(context)
        derived = []
        for source in context.reports:
            if not source.name.startswith(IDEAL_PREFIXES) or source.lhs is None:
                continue
            if source.rhs >= 1 - premise_tol:
                continue
            report = make_report(
                context,
                f"contrapositive:{source.name}",
                f"min{{n(X), n(Y)}} = {source.rhs:.6g} < 1 ⇒ {source.statement.split(' ≤ ')[0]} < 1",
                source.lhs,
                source.lhs_exact,
                one,
                source.rhs_exact,
                relation="<",
                witnesses=source.witnesses,
            )
            derived.append(report)
            announce(report)
        context.reports.extend(derived)
        return context


def default_steps() -> list[SuiteStep]:
    """默认验证流水线"""
    return [
        FactorIndexStep(),
        OperatorIdealStep(),
        TensorIdealStep("pi"),
        TensorIdealStep("eps"),
        DualTensorStep(),
        IdealCorollaryStep(),
        TransportStep(),
        ContrapositiveStep(),
    ]
