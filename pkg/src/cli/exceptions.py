"""
CLI例外処理

コア例外を終了コードに変換するデコレーターを定義します。
汎用アプリケーション例外は src.core.exceptions を参照してください。

終了コード:
    0 成功（出力は再検証済み）
    1 ソルバーが解を見つけられなかった
    2 入力・パラメータが不正、または H の像ではない
    3 挿入可能な g⁻¹ の原像がない
    4 検証失敗（内部の不整合）
    5 オラクル探索の予算切れ
"""

import logging
import sys
from functools import wraps

import pydantic

from src.core.exceptions import (
    AppException as CoreAppException,
    InputTooShortError as CoreInputTooShortError,
    ModulusMismatchError as CoreModulusMismatchError,
    NoInsertablePreimageError as CoreNoInsertablePreimageError,
    NotACollisionError as CoreNotACollisionError,
    NotAnImageError as CoreNotAnImageError,
    NotInvertibleError as CoreNotInvertibleError,
    SearchExhaustedError as CoreSearchExhaustedError,
    SolverGaveUpError as CoreSolverGaveUpError,
    UnsolvableInstanceError as CoreUnsolvableInstanceError,
    ValidationError as CoreValidationError,
    VerificationError as CoreVerificationError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_GAVE_UP = 1
EXIT_INVALID = 2
EXIT_NO_INSERTABLE_PREIMAGE = 3
EXIT_VERIFICATION_FAILED = 4
EXIT_SEARCH_EXHAUSTED = 5

_EXIT_CODES = (
    ((CoreSolverGaveUpError, CoreUnsolvableInstanceError), EXIT_GAVE_UP, "gave up"),
    ((CoreNotAnImageError,), EXIT_INVALID, "not an H-image"),
    ((CoreValidationError, CoreNotInvertibleError, CoreModulusMismatchError,
      CoreNotACollisionError, CoreInputTooShortError), EXIT_INVALID, "invalid input"),
    ((CoreNoInsertablePreimageError,), EXIT_NO_INSERTABLE_PREIMAGE, "no insertable preimage"),
    ((CoreVerificationError,), EXIT_VERIFICATION_FAILED, "verification failed"),
    ((CoreSearchExhaustedError,), EXIT_SEARCH_EXHAUSTED, "search exhausted"),
)


def exit_code_for(error: BaseException) -> int:
    """例外に対応する終了コード"""
    if isinstance(error, pydantic.ValidationError):
        return EXIT_INVALID
    for types, code, _ in _EXIT_CODES:
        if isinstance(error, types):
            return code
    if isinstance(error, CoreAppException):
        return EXIT_INVALID
    return EXIT_VERIFICATION_FAILED


def _label_for(error: BaseException) -> str:
    for types, _, label in _EXIT_CODES:
        if isinstance(error, types):
            return label
    return "error"


def _diagnostic(error: BaseException) -> str:
    label = _label_for(error)
    message = str(error)
    return message if label in message else f"{label}: {message}"


def handle_cli_exceptions(operation_name: str):
    """
    CLI-level exception handling decorator.
    Catches core exceptions, prints a diagnostic to stderr and returns the exit code.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except pydantic.ValidationError as e:
                print(f"{operation_name}: invalid input: {e.errors()[0]['msg']}", file=sys.stderr)
                return EXIT_INVALID
            except CoreVerificationError as e:
                logger.error(f"{operation_name} produced an output that did not re-verify: {e}")
                print(f"{operation_name}: verification failed: {e}", file=sys.stderr)
                return EXIT_VERIFICATION_FAILED
            except CoreAppException as e:
                print(f"{operation_name}: {_diagnostic(e)}", file=sys.stderr)
                return exit_code_for(e)
            except OSError as e:
                print(f"{operation_name}: {e}", file=sys.stderr)
                return EXIT_INVALID
            except Exception as e:
                logger.exception(f"Unhandled exception in {operation_name}: {type(e).__name__}")
                print(f"{operation_name}: internal error: {e}", file=sys.stderr)
                return EXIT_VERIFICATION_FAILED
        return wrapper
    return decorator
