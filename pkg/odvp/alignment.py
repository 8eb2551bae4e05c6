"""Module for lining up report text."""
import typing

LineParts = typing.Tuple[typing.Text, typing.Text]

def on_character(
	lines: typing.Sequence[LineParts],
	separator: typing.Text,
	joiner: typing.Text="\n",
	tail: typing.Optional[typing.Text]=None) -> typing.Text:
	"""Align a set of label/value lines on a common separator.

	Given something like [("lhs", "4.18"), ("margin", "0.5")], " : " this should return something like:

	lhs    : 4.18
	margin : 0.5
	"""
	if not lines:
		return ""
	max_first = max(len(l[0]) for l in lines)
	results = [
		"{first}{separator}{second}{tail}".format(
			first     = first.ljust(max_first),
			second    = second,
			separator = separator,
			tail      = tail if tail else "",
		) for first, second in lines]
	return joiner.join(results)

def columns(
	rows: typing.Sequence[typing.Sequence[typing.Text]],
	separator: typing.Text="  ",
	joiner: typing.Text="\n") -> typing.Text:
	"""Align a table so that every column starts at the same offset.

	The last column is left ragged so lines carry no trailing spaces.
	"""
	if not rows:
		return ""
	width = max(len(row) for row in rows)
	padded = [list(row) + [""] * (width - len(row)) for row in rows]
	sizes = [max(len(row[i]) for row in padded) for i in range(width - 1)]
	results = []
	for row in padded:
		cells = [cell.ljust(size) for cell, size in zip(row, sizes)] + [row[-1]]
		results.append(separator.join(cells).rstrip())
	return joiner.join(results)
