'''
Function:
    Implementation of LoggerHandle and the terminal table helpers used to show metrics, reports and sweeps
Author:
    adage developers
'''
import os
import shutil
import logging
import threading
import collections.abc
from wcwidth import wcswidth
from tabulate import tabulate
from prettytable import PrettyTable
from platformdirs import user_log_dir


'''COLORS'''
COLORS = {
    'red': '\033[31m', 'green': '\033[32m', 'yellow': '\033[33m', 'blue': '\033[34m', 'cyan': '\033[36m',
    'highlight': '\033[93m', 'number': '\033[96m', 'stage': '\033[95m',
}
RESET = '\033[0m'


'''colorize'''
def colorize(string, color):
    string = str(string)
    if color not in COLORS: return string
    return COLORS[color] + string + RESET


'''LoggerHandle'''
class LoggerHandle():
    appname = 'adage'
    appauthor = 'adage'
    # trial workers share one log file
    _file_lock = threading.Lock()
    def __init__(self, log_dir: str = None):
        log_dir = log_dir if log_dir else user_log_dir(appname=self.appname, appauthor=self.appauthor)
        os.makedirs(log_dir, exist_ok=True)
        self.log_file_path = os.path.join(log_dir, f'{self.appname}.log')
        logging.basicConfig(
            level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=[logging.FileHandler(self.log_file_path, encoding='utf-8'), logging.StreamHandler()],
        )
        self.logger = logging.getLogger(self.appname)
    '''tofile'''
    def tofile(self, level, message):
        with LoggerHandle._file_lock, open(self.log_file_path, 'a', encoding='utf-8') as fp:
            fp.write(f'{logging.getLevelName(level)} - {message}\n')
    '''emit'''
    def emit(self, level, message, disable_print=False, color=None):
        message = str(message)
        if disable_print: return self.tofile(level, message)
        if color and COLORS[color] not in message: message = colorize(message, color)
        self.logger.log(level, message)
    '''debug'''
    def debug(self, message, disable_print=False):
        self.emit(logging.DEBUG, message, disable_print)
    '''info'''
    def info(self, message, disable_print=False):
        self.emit(logging.INFO, message, disable_print)
    '''warning'''
    def warning(self, message, disable_print=False):
        self.emit(logging.WARNING, message, disable_print, color='yellow')
    '''error'''
    def error(self, message, disable_print=False):
        self.emit(logging.ERROR, message, disable_print, color='red')


'''terminalwidth'''
def terminalwidth(right_space: int = 0):
    width = shutil.get_terminal_size().columns - right_space
    assert width > 0, f'right space {right_space} leaves no room in a terminal of {shutil.get_terminal_size().columns} columns'
    return width


'''printtable'''
def printtable(titles, items, terminal_right_space_len=4):
    assert isinstance(titles, collections.abc.Sequence) and isinstance(items, collections.abc.Sequence), 'titles and items should be sequences'
    table = PrettyTable(list(titles))
    table.add_rows([list(item) for item in items])
    table.max_table_width = terminalwidth(terminal_right_space_len)
    print(table)
    return table


'''printfullline'''
def printfullline(ch: str = '*', end: str = '\n', terminal_right_space_len: int = 1):
    print(ch * terminalwidth(terminal_right_space_len), end=end)


'''displen'''
def displen(text) -> int:
    return 0 if text is None else max(wcswidth(str(text)), 0)


'''clip'''
def clip(text: str, width: int) -> str:
    text = str(text)
    if displen(text) <= width: return text
    # room for the ellipsis only when the cell is wide enough to hold it
    ellipsis = '...' if width > 3 else ''
    budget, used, kept = width - len(ellipsis), 0, []
    for ch in text:
        used += displen(ch)
        if used > budget: break
        kept.append(ch)
    return ''.join(kept) + ellipsis


'''smarttrunctable'''
def smarttrunctable(headers, rows, max_col_width=40, terminal_right_space_len=10, no_trunc_cols=None, min_col_width=4):
    headers, rows = [str(h) for h in headers], [[str(cell) for cell in row] for row in rows]
    assert all(len(row) == len(headers) for row in rows), 'all rows must have as many cells as there are headers'
    target = max(shutil.get_terminal_size().columns - terminal_right_space_len, 1)
    protected = {j for j, h in enumerate(headers) if j in (no_trunc_cols or []) or h in map(str, no_trunc_cols or [])}
    widths = [max([displen(h)] + [displen(row[j]) for row in rows]) for j, h in enumerate(headers)]
    limits = {j: max(min(width, max_col_width), min_col_width) for j, width in enumerate(widths) if j not in protected}
    while True:
        table = tabulate(
            [[clip(cell, limits[j]) if j in limits else cell for j, cell in enumerate(row)] for row in rows],
            headers=[clip(h, limits[j]) if j in limits else h for j, h in enumerate(headers)], tablefmt='fancy_grid',
        )
        shrinkable = [j for j, limit in limits.items() if limit > min_col_width]
        if max(displen(line) for line in table.splitlines()) <= target or not shrinkable: return table
        # narrow the widest truncatable column one cell at a time
        limits[max(shrinkable, key=lambda j: limits[j])] -= 1
