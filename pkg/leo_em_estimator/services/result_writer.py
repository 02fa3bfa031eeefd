"""结果文件：CSV 表格与绘图用 JSON

输出只依赖结果内容，同一结果重复写出的字节完全相同。
"""

import csv
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from ..models.estimation import EstimationMethod
from ..models.sweep import MethodSummary, SweepAxis, SweepPoint, SweepResult
from ..utils.exceptions import ErrorCode, ResultIOError
from ..utils.log_manager import get_logger

logger = get_logger('result_writer')

CSV_COLUMNS = ('axis', 'method', 'mean_nmse', 'mean_ser', 'ci_nmse', 'ci_ser',
               'trials', 'seed', 'median_nmse', 'median_ser')
SUMMARY_FIELDS = ('mean_nmse', 'mean_ser', 'median_nmse', 'median_ser', 'ci_nmse', 'ci_ser')
PLOT_SUFFIX = '.plot.json'

PathLike = Union[str, os.PathLike]


def plot_path_for(csv_path: PathLike) -> Path:
    path = Path(csv_path)
    return path.with_name(path.stem + PLOT_SUFFIX)


def _rows(result: SweepResult) -> List[List[str]]:
    rows = []
    for point in result.points:
        for method in EstimationMethod.ordered():
            summary = point.methods.get(method)
            if summary is None:
                continue
            rows.append([
                repr(float(point.axis_value)), method.value,
                repr(summary.mean_nmse), repr(summary.mean_ser),
                repr(summary.ci_nmse), repr(summary.ci_ser),
                str(point.trials), str(result.base_seed),
                repr(summary.median_nmse), repr(summary.median_ser),
            ])
    return rows


def plot_payload(result: SweepResult) -> Dict[str, Any]:
    """绘图 JSON 的内容"""
    series = {}
    for method in EstimationMethod.ordered():
        if all(method in point.methods for point in result.points) and result.points:
            series[method.value] = {
                'nmse': result.series(method, 'mean_nmse'),
                'ser': result.series(method, 'mean_ser'),
            }
    return {
        'axis': result.axis.value,
        'fixed_snr_db': result.fixed_snr_db,
        'base_seed': result.base_seed,
        'x': [float(v) for v in result.axis_values],
        'series': series,
        'extras': result.extras,
    }


def emit_results(result: SweepResult, csv_path: PathLike) -> Tuple[Path, Path]:
    """
    写出 CSV 与绘图 JSON

    Args:
        result: 扫描结果
        csv_path: CSV 路径，JSON 写在同目录下的 <stem>.plot.json

    Returns:
        (CSV 路径, JSON 路径)

    Raises:
        ResultIOError: 目录无法创建或文件无法写入
    """
    csv_file = Path(csv_path)
    plot_file = plot_path_for(csv_file)
    try:
        csv_file.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_file, 'w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(CSV_COLUMNS)
            writer.writerows(_rows(result))
        with open(plot_file, 'w', encoding='utf-8', newline='\n') as handle:
            json.dump(plot_payload(result), handle, sort_keys=True, indent=2)
            handle.write('\n')
    except (OSError, TypeError, ValueError) as e:
        logger.error(f"写出结果失败: {csv_file}: {e}")
        raise ResultIOError(f"无法写出结果文件: {csv_file}", path=str(csv_file), cause=e)

    logger.info(f"结果已写出: {csv_file} ({len(result.points)} 个扫描点)")
    return csv_file, plot_file


def load_results(csv_path: PathLike) -> SweepResult:
    """
    读回 emit_results 写出的结果

    Raises:
        ResultIOError: 文件缺失或格式错误
    """
    csv_file = Path(csv_path)
    plot_file = plot_path_for(csv_file)
    try:
        with open(plot_file, 'r', encoding='utf-8') as handle:
            payload = json.load(handle)
        with open(csv_file, 'r', encoding='utf-8', newline='') as handle:
            reader = csv.DictReader(handle)
            if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
                raise ResultIOError(f"CSV 表头不匹配: {reader.fieldnames}",
                                    error_code=ErrorCode.RESULT_PARSE_ERROR,
                                    path=str(csv_file))
            rows = list(reader)
    except ResultIOError:
        raise
    except (OSError, ValueError) as e:
        raise ResultIOError(f"无法读取结果文件: {csv_file}",
                            error_code=ErrorCode.RESULT_PARSE_ERROR,
                            path=str(csv_file), cause=e)

    try:
        points: Dict[float, SweepPoint] = {}
        for row in rows:
            axis_value = float(row['axis'])
            point = points.setdefault(axis_value, SweepPoint(axis_value=axis_value,
                                                             trials=int(row['trials'])))
            point.methods[EstimationMethod(row['method'])] = MethodSummary(
                **{name: float(row[name]) for name in SUMMARY_FIELDS})
        result = SweepResult(
            axis=SweepAxis(payload['axis']),
            points=list(points.values()),
            base_seed=int(payload['base_seed']),
            fixed_snr_db=payload['fixed_snr_db'],
            name=csv_file.stem,
            extras=payload.get('extras', {}),
        )
    except (KeyError, ValueError, TypeError) as e:
        raise ResultIOError(f"结果文件内容无法解析: {csv_file}",
                            error_code=ErrorCode.RESULT_PARSE_ERROR,
                            path=str(csv_file), cause=e)
    return result
