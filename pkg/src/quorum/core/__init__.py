from .answers import ANSWER_KINDS, AnswerValue, normalize_answer
from .model import Candidate, Check, SolverBinding, Task, Verdict, VerifierBinding
from .runstore import CellRecord, RunRecord, RunStore
from .verify import register_verifier, verify

__all__ = [
    "ANSWER_KINDS",
    "AnswerValue",
    "normalize_answer",
    "Candidate",
    "Check",
    "SolverBinding",
    "Task",
    "Verdict",
    "VerifierBinding",
    "CellRecord",
    "RunRecord",
    "RunStore",
    "register_verifier",
    "verify",
]
