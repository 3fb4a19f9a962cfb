"""A trusted kernel and CLI for a guarded cubical type theory.

The kernel decides judgemental equality with interval and face-lattice
reasoning, normalizes by weak-head reduction, and checks guarded recursive
programs whose fixed points unfold only up to paths.
"""
from .typecheck import (Definitions, check, check_declaration, check_system,
                    check_type, convert, infer, normalize_dsubst)
from .cofib import (face_dnf, face_entails, face_equal, face_of_interval,
                    forall_name, iv_equal, iv_equal_under)
from .errors import Diagnostic, IllTyped, ParseError, TypeCheckError
from .evaluator import eval_comp, normalize, select_system, type_of, unfold_path, whnf
from .parser import parse_expression, parse_module
from .pretty import pretty, pretty_face, pretty_iv
from .syntax import (Context, DSubst, Term, alpha_eq, free_names,
                     subst_interval, subst_term)

__version__ = "0.1.0"

__all__ = [
    "Context", "DSubst", "Definitions", "Diagnostic", "IllTyped",
    "ParseError", "Term", "TypeCheckError", "alpha_eq", "check",
    "check_declaration", "check_system", "check_type", "convert", "eval_comp",
    "face_dnf", "face_entails", "face_equal", "face_of_interval",
    "forall_name", "free_names", "infer", "iv_equal", "iv_equal_under",
    "normalize", "normalize_dsubst", "parse_expression", "parse_module",
    "pretty", "pretty_face", "pretty_iv", "select_system", "subst_interval",
    "subst_term", "type_of", "unfold_path", "whnf",
]
