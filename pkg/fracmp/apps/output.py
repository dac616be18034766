'''Output files of the commands.

Every file is written to a temporary file in the target directory and
moved in place with :func:`os.replace`, so readers never see a partial
file. CSV files are comma separated, with a header row, ``\\n`` line
endings and 17 significant digits: identical runs give identical bytes.
'''
import io
import os
import tempfile

import numpy as np

from ..utils.string import format_value


__all__ = ['atomic_write', 'write_csv', 'write_solution',
           'write_path_profile', 'write_report', 'write_convergence',
           'format_table']

CSV_FORMAT = '%.17g'


def atomic_write(path, text):
    '''Write ``text`` to ``path`` through a temporary file and a rename.'''
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp-',
                               suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as fp:
            fp.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


def write_csv(path, header, columns):
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    buffer = io.StringIO()
    np.savetxt(buffer, data, fmt=CSV_FORMAT, delimiter=',',
               header=','.join(header), comments='', newline='\n')
    return atomic_write(path, buffer.getvalue())


def write_solution(directory, u, derivative):
    '''``solution.csv`` with columns ``t, u, Dalpha_u``.'''
    return write_csv(os.path.join(directory, 'solution.csv'),
                     ('t', 'u', 'Dalpha_u'),
                     (u.grid.nodes, u.values, derivative))


def write_path_profile(directory, energies):
    '''``path_profile.csv`` with the energy of every path node.'''
    energies = np.asarray(energies, dtype=float)
    return write_csv(os.path.join(directory, 'path_profile.csv'),
                     ('j', 'I'), (np.arange(energies.size), energies))


def write_convergence(directory, rows):
    '''``convergence.csv`` with columns ``N, value, h``.'''
    rows = np.asarray(rows, dtype=float).reshape(-1, 3)
    return write_csv(os.path.join(directory, 'convergence.csv'),
                     ('N', 'value', 'h'), rows.T)


def write_report(directory, entries):
    '''``report.txt``, one ``key = value`` line per entry.'''
    text = ''.join('%s = %s\n' % (key, format_value(value))
                   for key, value in entries)
    return atomic_write(os.path.join(directory, 'report.txt'), text)


def format_table(header, rows):
    '''Left aligned plain text table.'''
    rows = [tuple(str(c) for c in row) for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows])
              for i, h in enumerate(header)]
    lines = ['  '.join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
             '  '.join('-' * w for w in widths)]
    for row in rows:
        lines.append('  '.join(c.ljust(w)
                               for c, w in zip(row, widths)).rstrip())
    return '\n'.join(lines) + '\n'
