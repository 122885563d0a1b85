"""
トランスクリプト出力

1行目は書式バージョン "cayley-affine-lab/1"。続いて "key: value" 行と、
段ごとに "stage: 名前 入力 -> 出力 [判定]" 行を出力します。
経過時間は record_timings のときだけ書くので、同じシードと設定なら出力は同一です。
"""

from typing import Any, Iterable, Optional, Tuple

from src.data_models.attack_models import AttackTranscript, StageRecord

TRANSCRIPT_HEADER = "cayley-affine-lab/1"


def _pairs(values: dict) -> str:
    return " ".join(f"{key}={value}" for key, value in values.items())


def render_stage(record: StageRecord, record_timings: bool = False) -> str:
    line = f"stage: {record.stage}"
    if record.inputs:
        line += f" {_pairs(record.inputs)}"
    line += " ->"
    if record.outputs:
        line += f" {_pairs(record.outputs)}"
    if record.verdict:
        line += f" [{record.verdict}]"
    if record_timings:
        line += f" elapsed_ms={record.elapsed_ms}"
    return line


def render_transcript(
    command: str,
    fields: Iterable[Tuple[str, Any]],
    transcript: Optional[AttackTranscript] = None,
    results: Iterable[Tuple[str, Any]] = (),
    record_timings: bool = False,
) -> str:
    """コマンドの結果をトランスクリプト文字列にする"""
    lines = [TRANSCRIPT_HEADER, f"command: {command}"]
    lines.extend(f"{key}: {value}" for key, value in fields)
    if transcript is not None:
        lines.extend(render_stage(record, record_timings) for record in transcript.stages)
    lines.extend(f"{key}: {value}" for key, value in results)
    return "\n".join(lines) + "\n"
