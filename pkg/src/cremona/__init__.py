"""Exact computer algebra for Cremona maps and symbolic Rees algebras."""

from .rings import (Field, FormMatrix, GF, MonomialOrder, NotDivisibleError,
                    ParseError, PolyRing, Polynomial, QQ, poly_sqrt, transfer)
from .groebner import (DeadlineExceeded, GroebnerBasis, check_deadline,
                       deadline, eliminate, groebner_basis, syzygies)
from .ideals import HilbertData, Ideal, minors
from .rees import (JacobianDual, ReesPresentation, jacobian_dual, rees_ideal,
                   subalgebra_presentation)
from .maps import (InverseData, RationalMapSpec, check_graph_identification,
                   invert, inversion_factor, is_birational,
                   plane_composition_oracle)
from .symbolic import (ConditionVerdict, ExpectedFormResult, SaturationTarget,
                       SymbolicFiltration, SymbolicReport, condition_i,
                       depth_positive, essential_generators,
                       expected_form_check, grade_two_check, symbolic_power,
                       symbolic_presentation, symbolic_report)
from .families import (AppendixData, DegenerateTemplate, SylvesterChain,
                       TemplateInstance, TemplateMatrix, appendix_construct,
                       signed_minors, sylvester_chain, sylvester_form,
                       template_ideal)
from . import fixtures

__all__ = [
    "AppendixData", "ConditionVerdict", "DeadlineExceeded",
    "DegenerateTemplate", "ExpectedFormResult", "Field", "FormMatrix", "GF",
    "GroebnerBasis", "HilbertData", "Ideal", "InverseData", "JacobianDual",
    "MonomialOrder", "NotDivisibleError", "ParseError", "PolyRing",
    "Polynomial", "QQ", "RationalMapSpec", "ReesPresentation",
    "SaturationTarget", "SylvesterChain", "SymbolicFiltration",
    "SymbolicReport", "TemplateInstance", "TemplateMatrix",
    "appendix_construct", "check_deadline", "check_graph_identification",
    "condition_i", "deadline", "depth_positive", "eliminate",
    "essential_generators", "expected_form_check", "fixtures",
    "grade_two_check", "groebner_basis", "invert", "inversion_factor",
    "is_birational", "jacobian_dual", "minors", "plane_composition_oracle",
    "poly_sqrt", "rees_ideal", "signed_minors", "subalgebra_presentation",
    "sylvester_chain", "sylvester_form", "symbolic_power",
    "symbolic_presentation", "symbolic_report", "syzygies",
    "template_ideal", "transfer",
]
