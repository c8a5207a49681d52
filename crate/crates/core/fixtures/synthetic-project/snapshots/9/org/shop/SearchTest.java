package org.shop;

import static org.junit.Assert.*;

public class SearchTest {
    private final CatalogFixture fixture = new CatalogFixture(74);
    // catalog step 0: load load verify verify load assert verify stub
    // catalog step 1: load setup load reset mock stub mock verify
    // catalog step 2: mock stub setup verify verify mock reset stub
    // catalog step 3: mock reset assert assert stub reset setup setup
    // catalog step 4: assert assert reset verify reset setup load setup
    // catalog step 5: stub stub reset reset load load assert setup
    // catalog step 6: reset mock reset setup stub setup assert verify
    // catalog step 7: verify load setup reset load load setup reset

    @Test
    public void case0() {
        assertEquals(597, fixture.count10());
        assertEquals(855, fixture.count16());
        assertEquals(862, fixture.put6());
    }

    @Test
    public void case1() {
        assertEquals(729, fixture.put9());
        assertEquals(139, fixture.get15());
        assertEquals(386, fixture.find31());
        assertEquals(292, fixture.find4());
        assertEquals(256, fixture.put34());
    }
}
