import inspect

import pytest

# The suite uses nose2-style generator tests, which yield (check, *args)
# tuples. Modern pytest refuses to collect them, so run each yielded case
# here exactly as nose2 would.

class GeneratorTest(pytest.Item):
	def __init__(self, *, function, **kwargs):
		super().__init__(**kwargs)
		self.function = function

	def runtest(self):
		for index, case in enumerate(self.function()):
			check, args = case[0], case[1:]
			try:
				check(*args)
			except Exception as e:
				e.add_note(f"generator case {index}: {check.__name__}{args!r}")
				raise

	def reportinfo(self):
		return self.path, None, self.name

@pytest.hookimpl(tryfirst=True)
def pytest_pycollect_makeitem(collector, name, obj):
	if collector.funcnamefilter(name) and inspect.isgeneratorfunction(obj):
		return GeneratorTest.from_parent(collector, name=name, function=obj)
