"""
メッセージ入出力

'0'/'1' テキスト、"len:hex" 形式、@path（ファイルから読み込み）を扱います。
"""

import logging
from pathlib import Path
from typing import Optional

from src.core.exceptions import ValidationError
from src.data_models.hash_models import BitString

logger = logging.getLogger(__name__)

# これより長いメッセージは len:hex で表示する
INLINE_BITS_LIMIT = 256


def read_message(text: str) -> BitString:
    """コマンドライン引数からメッセージを読む"""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            content = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ValidationError(f"cannot read message file {path}", {"error": str(e)})
        logger.debug(f"Read {len(content)} characters from {path}")
        return BitString.parse(content)
    return BitString.parse(text)


def format_message(m: BitString, limit: int = INLINE_BITS_LIMIT) -> str:
    """短いメッセージは 0/1 のまま、長いものは len:hex で表す"""
    if len(m) <= limit:
        return m.bits
    return m.to_hex()


def write_output(text: str, output_path: Optional[str] = None) -> None:
    """結果を標準出力またはファイルに書く"""
    if output_path:
        Path(output_path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(text)} characters to {output_path}")
    else:
        print(text, end="")
